#include "fqsim/sim/rng.hpp"

#include <stdexcept>

namespace fqsim {

std::uint64_t
stable_hash(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t
mix_seed(std::uint64_t base, std::uint64_t salt)
{
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::string_view stream_label)
    : seed_{seed},
      engine_{mix_seed(seed, stable_hash(stream_label))}
{
}

double
SeededRng::unit()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double
SeededRng::uniform(double lo, double hi)
{
    if (lo > hi)
    {
        throw std::invalid_argument{"uniform: lo must not exceed hi"};
    }
    if (lo == hi)
    {
        return lo;
    }
    const double x = lo + (hi - lo) * unit();
    // Rounding can land exactly on hi for wide intervals.
    return x < hi ? x : lo;
}

std::uint64_t
SeededRng::uniform_int(std::uint64_t lo, std::uint64_t hi)
{
    if (lo > hi)
    {
        throw std::invalid_argument{"uniform_int: lo must not exceed hi"};
    }
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX)
    {
        return engine_();
    }
    // Rejection sampling keeps the draw unbiased and portable.
    const std::uint64_t n = span + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit)
    {
        x = engine_();
    }
    return lo + x % n;
}

} // namespace fqsim
