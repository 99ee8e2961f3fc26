#include "fqsim/fqdetect/loss_ratio.hpp"

#include <cmath>

namespace fqsim {

double
compute_loss_ratio(double send1_bps, double recv1_bps, double send2_bps, double recv2_bps)
{
    for (double v : {send1_bps, recv1_bps, send2_bps, recv2_bps})
    {
        if (!std::isfinite(v) || v < 0.0)
        {
            throw DegenerateRoundError{"loss ratio: rates must be finite and non-negative"};
        }
    }
    if (send1_bps == 0.0 || send2_bps == 0.0)
    {
        throw DegenerateRoundError{"loss ratio: zero sending rate"};
    }
    if (recv1_bps == 0.0 || recv2_bps == 0.0)
    {
        throw DegenerateRoundError{"loss ratio: zero receiving rate"};
    }
    return (recv1_bps / send1_bps) / (recv2_bps / send2_bps);
}

double
compute_loss_ratio(const RoundReport& flow1, const RoundReport& flow2)
{
    return compute_loss_ratio(flow1.sending_rate_bps, flow1.receiving_rate_bps, flow2.sending_rate_bps,
                              flow2.receiving_rate_bps);
}

} // namespace fqsim
