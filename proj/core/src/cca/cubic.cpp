#include "fqsim/cca/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fqsim {

namespace {

constexpr double kMinCwnd = 1.0;

Duration
usable_srtt(Duration srtt)
{
    return srtt > Duration::zero() ? srtt : Duration{1'000};
}

} // namespace

CubicController::CubicController(RateLimits limits, CubicConfig config, double initial_cwnd_pkts, SimTime now,
                                 Duration srtt)
    : RateController{limits, limits.floor_bps},
      config_{config},
      cwnd_{std::max(initial_cwnd_pkts, kMinCwnd)},
      w_max_{cwnd_},
      epoch_start_{now}
{
    if (!(config_.beta > 0.0 && config_.beta < 1.0) || !(config_.c > 0.0))
    {
        throw std::invalid_argument{"CubicConfig: need 0 < beta < 1 and c > 0"};
    }
    set_rate(rate_for(srtt));
}

CubicController
CubicController::after_startup(RateLimits limits, CubicConfig config, double exit_rate_bps, Duration srtt,
                               SimTime now)
{
    const double bits = config.packet_bytes * 8.0;
    const double cwnd = exit_rate_bps * to_seconds(usable_srtt(srtt)) / bits;
    CubicController cubic{limits, config, cwnd, now, srtt};
    cubic.reduce(now);
    cubic.set_rate(cubic.rate_for(srtt));
    return cubic;
}

double
CubicController::rate_for(Duration srtt) const
{
    return cwnd_ * config_.packet_bytes * 8.0 / to_seconds(usable_srtt(srtt));
}

double
CubicController::window_at(Duration elapsed) const
{
    const double t = to_seconds(elapsed) - k_;
    return std::max(config_.c * t * t * t + w_max_, kMinCwnd);
}

void
CubicController::reduce(SimTime now)
{
    w_max_ = cwnd_;
    cwnd_ = std::max(cwnd_ * config_.beta, kMinCwnd);
    epoch_start_ = now;
    k_ = std::cbrt(w_max_ * (1.0 - config_.beta) / config_.c);
    reacted_this_round_ = true;
}

void
CubicController::on_loss(SimTime now, SimTime lost_sent_at, const RttEstimator& rtt)
{
    if (reacted_this_round_ || lost_sent_at < epoch_start_)
    {
        return;
    }
    reduce(now);
    set_rate(rate_for(rtt.srtt()));
}

double
CubicController::on_round(const RoundReport& report, const RttEstimator& rtt)
{
    reacted_this_round_ = false;
    cwnd_ = window_at(report.end() - epoch_start_);
    return set_rate(rate_for(rtt.srtt()));
}

} // namespace fqsim
