#include "fqsim/transport/pacer.hpp"

#include <cmath>
#include <stdexcept>

namespace fqsim {

Pacer::Pacer(double rate_bps, bool jitter, SeededRng rng)
    : rate_bps_{1.0},
      jitter_{jitter},
      rng_{std::move(rng)}
{
    set_rate(rate_bps);
}

void
Pacer::set_rate(double rate_bps)
{
    if (!std::isfinite(rate_bps) || rate_bps <= 0.0)
    {
        throw std::invalid_argument{"Pacer: rate must be finite and positive"};
    }
    rate_bps_ = rate_bps;
}

Duration
Pacer::nominal_gap(std::uint32_t packet_bytes) const
{
    return serialization_time(packet_bytes, rate_bps_);
}

Duration
Pacer::next_gap(std::uint32_t packet_bytes)
{
    if (!jitter_)
    {
        return nominal_gap(packet_bytes);
    }
    const double u = rng_.uniform(kJitterLow, kJitterHigh);
    return Duration{std::llround(static_cast<double>(packet_bytes) * 8e9 / rate_bps_ * u)};
}

} // namespace fqsim
