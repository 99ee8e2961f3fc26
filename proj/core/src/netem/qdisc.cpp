#include "fqsim/netem/qdisc.hpp"

#include <stdexcept>
#include <string>

namespace fqsim {

std::string_view
to_string(QdiscKind kind)
{
    return kind == QdiscKind::fq ? "fq" : "fifo";
}

QdiscKind
parse_qdisc_kind(std::string_view text)
{
    if (text == "fifo")
    {
        return QdiscKind::fifo;
    }
    if (text == "fq")
    {
        return QdiscKind::fq;
    }
    throw std::invalid_argument{"unknown qdisc kind '" + std::string{text} + "'"};
}

FifoQueue::FifoQueue(std::uint32_t capacity_pkts)
    : capacity_{capacity_pkts}
{
    if (capacity_ == 0)
    {
        throw std::invalid_argument{"qdisc capacity_pkts must be >= 1"};
    }
}

EnqueueResult
FifoQueue::enqueue(Packet pkt)
{
    if (queue_.size() >= capacity_)
    {
        return EnqueueResult::dropped;
    }
    queue_.push_back(std::move(pkt));
    return EnqueueResult::accepted;
}

std::optional<Packet>
FifoQueue::dequeue()
{
    if (queue_.empty())
    {
        return std::nullopt;
    }
    Packet pkt = std::move(queue_.front());
    queue_.pop_front();
    return pkt;
}

std::size_t
FifoQueue::occupancy(FlowId flow) const
{
    std::size_t n = 0;
    for (const auto& p : queue_)
    {
        n += p.flow == flow ? 1 : 0;
    }
    return n;
}

FairQueue::FairQueue(std::uint32_t per_flow_capacity_pkts, std::uint32_t quantum_bytes)
    : capacity_{per_flow_capacity_pkts},
      quantum_{quantum_bytes}
{
    if (capacity_ == 0)
    {
        throw std::invalid_argument{"qdisc capacity_pkts must be >= 1"};
    }
    if (quantum_ == 0)
    {
        throw std::invalid_argument{"qdisc quantum_bytes must be >= 1"};
    }
}

EnqueueResult
FairQueue::enqueue(Packet pkt)
{
    SubQueue& sq = flows_[pkt.flow];
    if (sq.packets.size() >= capacity_)
    {
        return EnqueueResult::dropped;
    }
    const FlowId flow = pkt.flow;
    sq.packets.push_back(std::move(pkt));
    ++total_;
    if (!sq.active)
    {
        sq.active = true;
        sq.deficit = 0;
        ring_.push_back(flow);
    }
    return EnqueueResult::accepted;
}

std::optional<Packet>
FairQueue::dequeue()
{
    while (!ring_.empty())
    {
        const FlowId flow = ring_.front();
        SubQueue& sq = flows_.at(flow);
        if (!head_credited_)
        {
            sq.deficit += quantum_;
            head_credited_ = true;
        }
        const std::uint32_t head_size = sq.packets.front().size_bytes;
        if (sq.deficit >= head_size)
        {
            Packet pkt = std::move(sq.packets.front());
            sq.packets.pop_front();
            sq.deficit -= head_size;
            --total_;
            if (sq.packets.empty())
            {
                sq.active = false;
                sq.deficit = 0;
                ring_.pop_front();
                head_credited_ = false;
            }
            return pkt;
        }
        ring_.pop_front();
        ring_.push_back(flow);
        head_credited_ = false;
    }
    return std::nullopt;
}

std::size_t
FairQueue::occupancy(FlowId flow) const
{
    auto it = flows_.find(flow);
    return it == flows_.end() ? 0 : it->second.packets.size();
}

std::uint32_t
FairQueue::deficit(FlowId flow) const
{
    auto it = flows_.find(flow);
    return it == flows_.end() ? 0 : it->second.deficit;
}

bool
FairQueue::is_active(FlowId flow) const
{
    auto it = flows_.find(flow);
    return it != flows_.end() && it->second.active;
}

std::unique_ptr<QueueDisc>
make_qdisc(const QdiscConfig& config)
{
    switch (config.kind)
    {
    case QdiscKind::fifo:
        return std::make_unique<FifoQueue>(config.capacity_pkts);
    case QdiscKind::fq:
        return std::make_unique<FairQueue>(config.capacity_pkts, config.quantum_bytes);
    }
    throw std::invalid_argument{"make_qdisc: unknown kind"};
}

} // namespace fqsim
