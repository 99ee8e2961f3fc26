#include "fqsim/sim/engine.hpp"

#include <stdexcept>
#include <utility>

namespace fqsim {

EventHandle
Engine::schedule(Duration delay, Action action)
{
    if (delay < Duration::zero())
    {
        throw std::invalid_argument{"Engine::schedule: negative delay"};
    }
    return schedule_at(now_ + delay, std::move(action));
}

EventHandle
Engine::schedule_at(SimTime at, Action action)
{
    if (at < now_)
    {
        throw std::invalid_argument{"Engine::schedule_at: time lies in the past"};
    }
    const std::uint64_t seq = next_seq_++;
    queue_.push(Event{at, seq, std::move(action)});
    return EventHandle{seq};
}

void
Engine::cancel(EventHandle handle)
{
    if (handle.valid() && handle.id() < next_seq_)
    {
        cancelled_.insert(handle.id());
    }
}

std::uint64_t
Engine::run_until(SimTime end)
{
    if (end < now_)
    {
        throw std::invalid_argument{"Engine::run_until: end lies in the past"};
    }
    stop_requested_ = false;
    std::uint64_t count = 0;
    while (!queue_.empty() && queue_.top().fire_at <= end)
    {
        // priority_queue::top is const; the action is moved out before pop.
        Event ev = std::move(const_cast<Event&>(queue_.top()));
        queue_.pop();
        if (!cancelled_.empty())
        {
            if (auto it = cancelled_.find(ev.seq); it != cancelled_.end())
            {
                cancelled_.erase(it);
                continue;
            }
        }
        now_ = ev.fire_at;
        ev.action();
        ++count;
        ++executed_;
        if (stop_requested_)
        {
            return count;
        }
    }
    now_ = end;
    return count;
}

} // namespace fqsim
