#include "fqsim/cca/delay_based.hpp"

namespace fqsim {

DelayBasedController::DelayBasedController(RateLimits limits, DelayBasedConfig config, double initial_rate_bps)
    : RateController{limits, initial_rate_bps},
      config_{config}
{
}

double
DelayBasedController::on_round(const RoundReport& /*report*/, const RttEstimator& rtt)
{
    if (!rtt.has_sample())
    {
        return rate_bps();
    }
    if (rtt.latest() <= rtt.min() + config_.threshold)
    {
        return set_rate(rate_bps() * config_.increase_factor);
    }
    return set_rate(rate_bps() * config_.decrease_factor);
}

} // namespace fqsim
