#pragma once

#include "fqsim/netem/packet.hpp"
#include "fqsim/sim/time.hpp"
#include "fqsim/transport/round_ledger.hpp"
#include "fqsim/transport/rtt_estimator.hpp"

#include <string_view>

namespace fqsim {

/// Bounds applied to every commanded rate. The floor is one packet per
/// second; the ceiling models the sender's access link.
struct RateLimits
{
    double floor_bps{kDefaultPacketBytes * 8.0};
    double ceiling_bps{1e9};

    /// Clamps into [floor, ceiling]; NaN maps to the floor.
    double clamp(double rate_bps) const;
};

/**
 * Rate-based congestion controller contract.
 *
 * on_round is invoked at every round boundary with the frozen counters of
 * the round that just ended and returns the rate for the round that starts.
 * on_loss is invoked as each loss is declared.
 */
class RateController
{
  public:
    RateController(RateLimits limits, double initial_rate_bps);
    virtual ~RateController() = default;

    virtual std::string_view name() const = 0;
    virtual double on_round(const RoundReport& report, const RttEstimator& rtt) = 0;
    virtual void on_loss(SimTime /*now*/, SimTime /*lost_sent_at*/, const RttEstimator& /*rtt*/) {}
    /// Packets allowed in flight on top of pacing; 0 means unlimited.
    virtual double inflight_cap_pkts() const { return 0.0; }

    double rate_bps() const { return rate_; }
    const RateLimits& limits() const { return limits_; }

  protected:
    double set_rate(double rate_bps);

  private:
    RateLimits limits_;
    double rate_;
};

} // namespace fqsim
