#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fqsim {

/// Deterministic, platform-independent random stream identified by a
/// (seed, label) pair. Distinct labels give independent streams, so adding a
/// component does not shift the draws seen by the others.
class SeededRng
{
  public:
    SeededRng(std::uint64_t seed, std::string_view stream_label);

    /// Uniform draw in [lo, hi). Returns lo exactly when lo == hi.
    /// Throws std::invalid_argument if lo > hi.
    double uniform(double lo, double hi);

    /// Uniform draw in [0, 1) with 53 bits of resolution.
    double unit();

    /// Uniform integer in [lo, hi] (inclusive).
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

    std::uint64_t next_u64() { return engine_(); }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// 64-bit FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t stable_hash(std::string_view text);

/// SplitMix64 finaliser, used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

} // namespace fqsim
