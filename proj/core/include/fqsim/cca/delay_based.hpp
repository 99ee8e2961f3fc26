#pragma once

#include "fqsim/cca/controller.hpp"

namespace fqsim {

struct DelayBasedConfig
{
    Duration threshold{from_millis(5.0)};
    double increase_factor{1.01};
    double decrease_factor{0.95};
};

/// Grows 1% per round while the latest RTT is within `threshold` of the
/// connection's minimum RTT (inclusive), shrinks 5% otherwise.
class DelayBasedController final : public RateController
{
  public:
    DelayBasedController(RateLimits limits, DelayBasedConfig config, double initial_rate_bps);

    std::string_view name() const override { return "delay_based"; }
    double on_round(const RoundReport& report, const RttEstimator& rtt) override;

    const DelayBasedConfig& config() const { return config_; }

  private:
    DelayBasedConfig config_;
};

} // namespace fqsim
