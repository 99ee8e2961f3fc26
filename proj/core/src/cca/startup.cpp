#include "fqsim/cca/startup.hpp"

namespace fqsim {

StartupController::StartupController(RateLimits limits, double initial_rate_bps)
    : RateController{limits, initial_rate_bps}
{
}

double
StartupController::on_round(const RoundReport& report, const RttEstimator& /*rtt*/)
{
    if (exited_)
    {
        return rate_bps();
    }
    if (!report.lost())
    {
        return set_rate(rate_bps() * 2.0);
    }
    exited_ = true;
    return set_rate(report.receiving_rate_bps);
}

} // namespace fqsim
