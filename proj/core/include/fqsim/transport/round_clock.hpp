#pragma once

#include "fqsim/sim/engine.hpp"

#include <functional>

namespace fqsim {

/// Periodic round boundary. The tick callback returns the duration of the
/// round it opens, so rounds follow the srtt sampled at each boundary.
class RoundClock
{
  public:
    using TickFn = std::function<Duration()>;

    /// Lower bound on a round so degenerate paths cannot spin the engine.
    static constexpr Duration kMinRound{1'000};

    RoundClock(Engine& engine, TickFn on_tick);

    RoundClock(const RoundClock&) = delete;
    RoundClock& operator=(const RoundClock&) = delete;

    void start(Duration first_round);
    void stop();
    bool running() const { return running_; }

  private:
    void arm(Duration d);

    Engine& engine_;
    TickFn on_tick_;
    EventHandle pending_;
    bool running_{false};
};

} // namespace fqsim
