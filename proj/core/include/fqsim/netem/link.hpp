#pragma once

#include "fqsim/netem/packet.hpp"
#include "fqsim/netem/qdisc.hpp"
#include "fqsim/sim/engine.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace fqsim {

struct LinkConfig
{
    std::uint64_t rate_bps{10'000'000};
    Duration prop_delay{from_millis(10)};
    QdiscConfig qdisc{};
};

/// Throws std::invalid_argument when a LinkConfig field is out of range.
void validate(const LinkConfig& config);

/// Ground-truth per-flow accounting at the bottleneck.
struct LinkCounters
{
    std::uint64_t arrived{0};
    std::uint64_t dropped{0};
    std::uint64_t transmitted{0};
    std::uint64_t delivered{0};
    std::uint64_t bytes_delivered{0};
};

/**
 * Forward bottleneck: queue discipline, serialisation at rate_bps and a
 * propagation delay. The link is work conserving: it starts the next
 * transmission the instant the previous one completes if anything is queued.
 */
class BottleneckLink
{
  public:
    using DeliverFn = std::function<void(const Packet&)>;
    using TraceFn = std::function<void(const Packet&)>;

    BottleneckLink(Engine& engine, LinkConfig config, DeliverFn deliver);

    EnqueueResult send(Packet pkt);

    bool busy() const { return busy_; }
    const LinkConfig& config() const { return config_; }
    const QueueDisc& qdisc() const { return *qdisc_; }
    const LinkCounters& counters(FlowId flow) const;
    std::uint64_t bytes_transmitted() const { return bytes_transmitted_; }
    Duration busy_time() const { return busy_time_; }

    /// Invoked each time a packet leaves the queue and starts serialising.
    void set_dequeue_trace(TraceFn fn) { on_dequeue_ = std::move(fn); }

  private:
    LinkCounters& counters_mut(FlowId flow);
    void start_next();
    void finish(Packet pkt);

    Engine& engine_;
    LinkConfig config_;
    DeliverFn deliver_;
    TraceFn on_dequeue_;
    std::unique_ptr<QueueDisc> qdisc_;
    bool busy_{false};
    std::uint64_t bytes_transmitted_{0};
    Duration busy_time_{0};
    std::vector<LinkCounters> counters_;
};

/// Uncongested return path: fixed latency, no queueing, no serialisation.
class ReversePath
{
  public:
    using DeliverFn = std::function<void(const Packet&)>;

    ReversePath(Engine& engine, Duration prop_delay, DeliverFn deliver);

    void send(Packet ack);

  private:
    Engine& engine_;
    Duration prop_delay_;
    DeliverFn deliver_;
};

} // namespace fqsim
