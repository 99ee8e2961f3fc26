#pragma once

#include "fqsim/sim/rng.hpp"
#include "fqsim/sim/time.hpp"

#include <cstdint>
#include <functional>
#include <queue>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace fqsim {

class EventHandle
{
  public:
    EventHandle() = default;
    bool valid() const { return id_ != 0; }
    std::uint64_t id() const { return id_; }

  private:
    friend class Engine;
    explicit EventHandle(std::uint64_t id) : id_{id} {}
    std::uint64_t id_{0};
};

/**
 * Single-threaded discrete-event engine.
 *
 * Events fire in (fire_at, insertion order) order. Cancellation marks the
 * event dead; it is discarded when it reaches the head of the queue.
 */
class Engine
{
  public:
    using Action = std::function<void()>;

    explicit Engine(std::uint64_t seed = 0) : seed_{seed} {}

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    SimTime now() const { return now_; }
    std::uint64_t seed() const { return seed_; }

    /// Throws std::invalid_argument for a negative delay.
    EventHandle schedule(Duration delay, Action action);

    /// Throws std::invalid_argument if `at` lies in the past.
    EventHandle schedule_at(SimTime at, Action action);

    /// Cancelling an event that already fired has no effect.
    void cancel(EventHandle handle);

    /// Executes every event with fire_at <= end, then advances the clock to
    /// `end`. If stop() is called from inside an event the run returns early
    /// with the clock left at that event's time. Returns the number of
    /// executed events.
    std::uint64_t run_until(SimTime end);

    void stop() { stop_requested_ = true; }
    bool stopped() const { return stop_requested_; }

    /// Queued events, including cancelled ones not yet discarded.
    std::size_t queued() const { return queue_.size(); }
    std::uint64_t executed() const { return executed_; }

    /// Named random stream derived from the engine seed.
    SeededRng rng(std::string_view stream_label) const { return SeededRng{seed_, stream_label}; }

  private:
    struct Event
    {
        SimTime fire_at;
        std::uint64_t seq;
        Action action;
    };

    struct Later
    {
        bool operator()(const Event& a, const Event& b) const
        {
            if (a.fire_at != b.fire_at)
            {
                return a.fire_at > b.fire_at;
            }
            return a.seq > b.seq;
        }
    };

    SimTime now_{kSimStart};
    std::uint64_t seed_;
    std::uint64_t next_seq_{1};
    std::uint64_t executed_{0};
    bool stop_requested_{false};
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::unordered_set<std::uint64_t> cancelled_;
};

} // namespace fqsim
