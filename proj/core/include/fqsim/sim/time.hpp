#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>

namespace fqsim {

/// Virtual clock of a simulation run. Ticks are integer nanoseconds.
struct SimClock
{
    using rep = std::int64_t;
    using period = std::nano;
    using duration = std::chrono::duration<rep, period>;
    using time_point = std::chrono::time_point<SimClock>;
    static constexpr bool is_steady = true;
};

using Duration = SimClock::duration;
using SimTime = SimClock::time_point;

inline constexpr SimTime kSimStart{};

constexpr double
to_seconds(Duration d)
{
    return static_cast<double>(d.count()) * 1e-9;
}

constexpr double
to_millis(Duration d)
{
    return static_cast<double>(d.count()) * 1e-6;
}

constexpr double
to_seconds(SimTime t)
{
    return to_seconds(t.time_since_epoch());
}

inline Duration
from_seconds(double s)
{
    return Duration{std::llround(s * 1e9)};
}

inline Duration
from_millis(double ms)
{
    return Duration{std::llround(ms * 1e6)};
}

inline SimTime
at_seconds(double s)
{
    return SimTime{from_seconds(s)};
}

/// Time to clock `bytes` onto a wire running at `rate_bps`, rounded to the
/// nearest nanosecond using integer arithmetic.
constexpr Duration
serialization_time(std::uint64_t bytes, std::uint64_t rate_bps)
{
    const std::uint64_t bit_ns = bytes * 8U * 1'000'000'000ULL;
    return Duration{static_cast<std::int64_t>((bit_ns + rate_bps / 2) / rate_bps)};
}

/// Same as above for a fractional (controller-commanded) rate.
inline Duration
serialization_time(std::uint64_t bytes, double rate_bps)
{
    return Duration{std::llround(static_cast<double>(bytes) * 8e9 / rate_bps)};
}

} // namespace fqsim
