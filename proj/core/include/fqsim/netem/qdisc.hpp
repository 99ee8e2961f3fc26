#pragma once

#include "fqsim/netem/packet.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string_view>
#include <unordered_map>

namespace fqsim {

enum class QdiscKind : std::uint8_t
{
    fifo,
    fq,
};

std::string_view to_string(QdiscKind kind);
/// Throws std::invalid_argument for anything other than "fifo" / "fq".
QdiscKind parse_qdisc_kind(std::string_view text);

/// For fifo `capacity_pkts` is shared by all flows; for fq it applies to
/// every per-flow sub-queue.
struct QdiscConfig
{
    QdiscKind kind{QdiscKind::fifo};
    std::uint32_t capacity_pkts{100};
    std::uint32_t quantum_bytes{kDefaultPacketBytes};
};

enum class EnqueueResult : std::uint8_t
{
    accepted,
    dropped,
};

/// Bottleneck queue. Occupancy counts waiting packets only; the packet on the
/// wire has already left the discipline.
class QueueDisc
{
  public:
    virtual ~QueueDisc() = default;

    virtual EnqueueResult enqueue(Packet pkt) = 0;
    virtual std::optional<Packet> dequeue() = 0;
    virtual std::size_t size() const = 0;
    virtual std::size_t occupancy(FlowId flow) const = 0;

    bool empty() const { return size() == 0; }
};

class FifoQueue final : public QueueDisc
{
  public:
    explicit FifoQueue(std::uint32_t capacity_pkts);

    EnqueueResult enqueue(Packet pkt) override;
    std::optional<Packet> dequeue() override;
    std::size_t size() const override { return queue_.size(); }
    std::size_t occupancy(FlowId flow) const override;

  private:
    std::uint32_t capacity_;
    std::deque<Packet> queue_;
};

/**
 * Per-flow drop-tail sub-queues served by deficit round robin.
 *
 * Each visit to the head of the active ring credits that flow with one
 * quantum; the flow transmits while its deficit covers the head packet and
 * rotates to the tail otherwise. A flow leaves the ring, and its deficit is
 * reset, as soon as its sub-queue empties.
 */
class FairQueue final : public QueueDisc
{
  public:
    FairQueue(std::uint32_t per_flow_capacity_pkts, std::uint32_t quantum_bytes);

    EnqueueResult enqueue(Packet pkt) override;
    std::optional<Packet> dequeue() override;
    std::size_t size() const override { return total_; }
    std::size_t occupancy(FlowId flow) const override;

    std::uint32_t deficit(FlowId flow) const;
    bool is_active(FlowId flow) const;
    std::size_t active_flows() const { return ring_.size(); }

  private:
    struct SubQueue
    {
        std::deque<Packet> packets;
        std::uint32_t deficit{0};
        bool active{false};
    };

    std::uint32_t capacity_;
    std::uint32_t quantum_;
    std::size_t total_{0};
    bool head_credited_{false};
    std::unordered_map<FlowId, SubQueue> flows_;
    std::deque<FlowId> ring_;
};

std::unique_ptr<QueueDisc> make_qdisc(const QdiscConfig& config);

} // namespace fqsim
