#pragma once

#include "fqsim/transport/round_ledger.hpp"

#include <stdexcept>

namespace fqsim {

/// Raised when a round carries no usable goodput or send rate.
class DegenerateRoundError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/**
 * Delivered fraction of flow 1 divided by the delivered fraction of flow 2:
 *
 *     (recv1 / send1) / (recv2 / send2)
 *
 * With flow 2 sending twice as fast, a shared drop-tail queue drops both
 * flows alike (ratio near 1) while fair queuing gives both flows the same
 * goodput (ratio near 2).
 *
 * Throws DegenerateRoundError if a send rate or a receiving rate is zero or
 * any input is not finite.
 */
double compute_loss_ratio(double send1_bps, double recv1_bps, double send2_bps, double recv2_bps);

double compute_loss_ratio(const RoundReport& flow1, const RoundReport& flow2);

} // namespace fqsim
