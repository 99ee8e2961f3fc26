#include "fqsim/transport/rtt_estimator.hpp"

#include <algorithm>

namespace fqsim {

void
RttEstimator::add_sample(Duration sample)
{
    latest_ = sample;
    min_ = std::min(min_, sample);
    if (samples_ == 0)
    {
        srtt_ = sample;
    }
    else
    {
        srtt_ += (sample - srtt_) / 8;
    }
    ++samples_;
}

void
RttEstimator::merge_min(Duration other_min)
{
    min_ = std::min(min_, other_min);
}

} // namespace fqsim
