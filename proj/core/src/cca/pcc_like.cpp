#include "fqsim/cca/pcc_like.hpp"

#include <stdexcept>

namespace fqsim {

double
pcc_utility(double rate_bps, double loss_fraction, double penalty)
{
    return rate_bps * (1.0 - loss_fraction) - penalty * rate_bps * loss_fraction;
}

PccLikeController::PccLikeController(RateLimits limits, PccConfig config, double initial_rate_bps)
    : RateController{limits, initial_rate_bps},
      config_{config},
      base_{limits.clamp(initial_rate_bps)}
{
    if (!(config_.epsilon > 0.0 && config_.epsilon < 0.5))
    {
        throw std::invalid_argument{"PccConfig: epsilon must lie in (0, 0.5)"};
    }
    // The first commanded round is the upward probe.
    set_rate(base_ * (1.0 + config_.epsilon));
}

double
PccLikeController::on_round(const RoundReport& report, const RttEstimator& /*rtt*/)
{
    const double eps = config_.epsilon;
    switch (phase_)
    {
    case Phase::probe_up:
        phase_ = Phase::probe_down;
        return set_rate(base_ * (1.0 - eps));
    case Phase::probe_down:
        utility_up_ = pcc_utility(base_ * (1.0 + eps), report.loss_fraction(), config_.penalty);
        phase_ = Phase::settle;
        return set_rate(base_);
    case Phase::settle: {
        const double utility_down = pcc_utility(base_ * (1.0 - eps), report.loss_fraction(), config_.penalty);
        const int direction = utility_up_ > utility_down ? 1 : -1;
        const double step = direction == last_direction_ ? 2.0 * eps : eps;
        last_direction_ = direction;
        base_ = limits().clamp(base_ * (1.0 + direction * step));
        phase_ = Phase::probe_up;
        return set_rate(base_ * (1.0 + eps));
    }
    }
    return rate_bps();
}

} // namespace fqsim
