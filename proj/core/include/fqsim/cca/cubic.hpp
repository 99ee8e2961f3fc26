#pragma once

#include "fqsim/cca/controller.hpp"

#include <cstdint>

namespace fqsim {

struct CubicConfig
{
    double beta{0.7};
    /// Window growth constant in packets / s^3.
    double c{0.4};
    std::uint32_t packet_bytes{kDefaultPacketBytes};
};

/**
 * Rate-based Cubic. The window follows
 *
 *     cwnd(t) = c * (t - K)^3 + w_max,   K = cbrt(w_max * (1 - beta) / c)
 *
 * with t measured from the last reduction, and is converted to a paced rate
 * of cwnd * packet_bits / srtt at every round boundary. A loss reduces cwnd
 * to beta * cwnd at most once per round, and only for packets sent after the
 * previous reduction.
 */
class CubicController final : public RateController
{
  public:
    /// Starts a growth epoch at `now` with w_max = cwnd = initial_cwnd_pkts.
    CubicController(RateLimits limits, CubicConfig config, double initial_cwnd_pkts, SimTime now, Duration srtt);

    /// Builds the controller at the end of startup: the window is sized from
    /// the delivered rate over one srtt and the exit loss is applied.
    static CubicController after_startup(RateLimits limits, CubicConfig config, double exit_rate_bps, Duration srtt,
                                         SimTime now);

    std::string_view name() const override { return "cubic"; }
    double on_round(const RoundReport& report, const RttEstimator& rtt) override;
    void on_loss(SimTime now, SimTime lost_sent_at, const RttEstimator& rtt) override;

    /// Window law evaluated `elapsed` after the epoch start.
    double window_at(Duration elapsed) const;

    double cwnd() const { return cwnd_; }
    double inflight_cap_pkts() const override { return cwnd_; }
    double w_max() const { return w_max_; }
    double k_seconds() const { return k_; }
    SimTime epoch_start() const { return epoch_start_; }

  private:
    void reduce(SimTime now);
    double rate_for(Duration srtt) const;

    CubicConfig config_;
    double cwnd_;
    double w_max_;
    double k_{0.0};
    SimTime epoch_start_;
    bool reacted_this_round_{false};
};

} // namespace fqsim
