#include "fqsim/cca/controller.hpp"

#include <algorithm>
#include <cmath>

namespace fqsim {

double
RateLimits::clamp(double rate_bps) const
{
    if (!std::isfinite(rate_bps))
    {
        return rate_bps > 0 ? ceiling_bps : floor_bps;
    }
    return std::clamp(rate_bps, floor_bps, ceiling_bps);
}

RateController::RateController(RateLimits limits, double initial_rate_bps)
    : limits_{limits},
      rate_{limits.clamp(initial_rate_bps)}
{
}

double
RateController::set_rate(double rate_bps)
{
    rate_ = limits_.clamp(rate_bps);
    return rate_;
}

} // namespace fqsim
