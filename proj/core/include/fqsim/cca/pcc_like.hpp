#pragma once

#include "fqsim/cca/controller.hpp"

#include <cstdint>

namespace fqsim {

struct PccConfig
{
    double epsilon{0.05};
    double penalty{10.0};
};

/// U(rate, loss) = rate * (1 - loss) - penalty * rate * loss.
double pcc_utility(double rate_bps, double loss_fraction, double penalty);

/**
 * Simplified utility-probing controller.
 *
 * Each cycle spans three rounds: probe at base*(1+eps), probe at
 * base*(1-eps), then hold at base while the second probe is measured. ACKs
 * lag sends by about one round, so the report closing round k is scored
 * against the rate commanded in round k-1. The base then moves towards the
 * better probe by eps, or by 2*eps when it moves the same way twice in a row.
 */
class PccLikeController final : public RateController
{
  public:
    enum class Phase : std::uint8_t
    {
        probe_up,
        probe_down,
        settle,
    };

    PccLikeController(RateLimits limits, PccConfig config, double initial_rate_bps);

    std::string_view name() const override { return "pcc_like"; }
    double on_round(const RoundReport& report, const RttEstimator& rtt) override;

    double base_rate() const { return base_; }
    Phase phase() const { return phase_; }
    const PccConfig& config() const { return config_; }

  private:
    PccConfig config_;
    double base_;
    Phase phase_{Phase::probe_up};
    double utility_up_{0.0};
    int last_direction_{0};
};

} // namespace fqsim
