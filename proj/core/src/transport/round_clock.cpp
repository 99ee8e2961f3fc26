#include "fqsim/transport/round_clock.hpp"

#include <algorithm>

namespace fqsim {

RoundClock::RoundClock(Engine& engine, TickFn on_tick)
    : engine_{engine},
      on_tick_{std::move(on_tick)}
{
}

void
RoundClock::start(Duration first_round)
{
    running_ = true;
    arm(first_round);
}

void
RoundClock::stop()
{
    running_ = false;
    engine_.cancel(pending_);
    pending_ = EventHandle{};
}

void
RoundClock::arm(Duration d)
{
    pending_ = engine_.schedule(std::max(d, kMinRound), [this]() {
        pending_ = EventHandle{};
        if (!running_)
        {
            return;
        }
        const Duration next = on_tick_();
        if (running_)
        {
            arm(next);
        }
    });
}

} // namespace fqsim
