#pragma once

#include "fqsim/sim/rng.hpp"
#include "fqsim/sim/time.hpp"

#include <cstdint>

namespace fqsim {

/// Turns a commanded rate into inter-send gaps. With jitter enabled each gap
/// is the nominal gap scaled by u ~ U[0.5, 1.5), which keeps the long-run
/// rate while breaking phase locking between flows.
class Pacer
{
  public:
    static constexpr double kJitterLow = 0.5;
    static constexpr double kJitterHigh = 1.5;

    Pacer(double rate_bps, bool jitter, SeededRng rng);

    Duration nominal_gap(std::uint32_t packet_bytes) const;
    Duration next_gap(std::uint32_t packet_bytes);

    /// Throws std::invalid_argument unless rate_bps is finite and > 0.
    void set_rate(double rate_bps);
    double rate() const { return rate_bps_; }

    void set_jitter(bool enabled) { jitter_ = enabled; }
    bool jitter() const { return jitter_; }

  private:
    double rate_bps_;
    bool jitter_;
    SeededRng rng_;
};

} // namespace fqsim
