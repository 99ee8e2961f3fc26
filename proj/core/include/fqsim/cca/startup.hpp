#pragma once

#include "fqsim/cca/controller.hpp"

namespace fqsim {

/// Exponential startup: doubles per lossless round; the first lossy round
/// ends it and the rate falls back to that round's receiving rate.
class StartupController final : public RateController
{
  public:
    StartupController(RateLimits limits, double initial_rate_bps);

    std::string_view name() const override { return "startup"; }
    double on_round(const RoundReport& report, const RttEstimator& rtt) override;

    bool exited() const { return exited_; }

  private:
    bool exited_{false};
};

} // namespace fqsim
