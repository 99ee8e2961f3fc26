#pragma once

#include "fqsim/sim/time.hpp"

#include <cstdint>

namespace fqsim {

/// Min / latest / smoothed RTT. The smoothed value is an EWMA with gain 1/8
/// seeded by the first sample.
class RttEstimator
{
  public:
    void add_sample(Duration sample);

    /// Folds in a minimum observed elsewhere on the same path.
    void merge_min(Duration other_min);

    bool has_sample() const { return samples_ > 0; }
    std::uint64_t samples() const { return samples_; }

    Duration min() const { return min_; }
    Duration latest() const { return latest_; }
    Duration srtt() const { return srtt_; }

  private:
    Duration min_{Duration::max()};
    Duration latest_{0};
    Duration srtt_{0};
    std::uint64_t samples_{0};
};

} // namespace fqsim
