#include "fqsim/netem/link.hpp"

#include <stdexcept>

namespace fqsim {

void
validate(const LinkConfig& config)
{
    if (config.rate_bps == 0)
    {
        throw std::invalid_argument{"link rate_bps must be > 0"};
    }
    if (config.prop_delay < Duration::zero())
    {
        throw std::invalid_argument{"link prop_delay must be >= 0"};
    }
    if (config.qdisc.capacity_pkts == 0)
    {
        throw std::invalid_argument{"qdisc capacity_pkts must be >= 1"};
    }
}

BottleneckLink::BottleneckLink(Engine& engine, LinkConfig config, DeliverFn deliver)
    : engine_{engine},
      config_{config},
      deliver_{std::move(deliver)}
{
    validate(config_);
    qdisc_ = make_qdisc(config_.qdisc);
}

const LinkCounters&
BottleneckLink::counters(FlowId flow) const
{
    static const LinkCounters empty{};
    return flow < counters_.size() ? counters_[flow] : empty;
}

LinkCounters&
BottleneckLink::counters_mut(FlowId flow)
{
    if (flow >= counters_.size())
    {
        counters_.resize(flow + 1);
    }
    return counters_[flow];
}

EnqueueResult
BottleneckLink::send(Packet pkt)
{
    LinkCounters& c = counters_mut(pkt.flow);
    ++c.arrived;
    const EnqueueResult result = qdisc_->enqueue(std::move(pkt));
    if (result == EnqueueResult::dropped)
    {
        ++c.dropped;
        return result;
    }
    if (!busy_)
    {
        start_next();
    }
    return result;
}

void
BottleneckLink::start_next()
{
    std::optional<Packet> next = qdisc_->dequeue();
    if (!next)
    {
        busy_ = false;
        return;
    }
    busy_ = true;
    ++counters_mut(next->flow).transmitted;
    if (on_dequeue_)
    {
        on_dequeue_(*next);
    }
    const Duration tx = serialization_time(next->size_bytes, config_.rate_bps);
    busy_time_ += tx;
    bytes_transmitted_ += next->size_bytes;
    engine_.schedule(tx, [this, pkt = std::move(*next)]() mutable { finish(std::move(pkt)); });
}

void
BottleneckLink::finish(Packet pkt)
{
    engine_.schedule(config_.prop_delay, [this, pkt]() {
        LinkCounters& c = counters_mut(pkt.flow);
        ++c.delivered;
        c.bytes_delivered += pkt.size_bytes;
        deliver_(pkt);
    });
    start_next();
}

ReversePath::ReversePath(Engine& engine, Duration prop_delay, DeliverFn deliver)
    : engine_{engine},
      prop_delay_{prop_delay},
      deliver_{std::move(deliver)}
{
}

void
ReversePath::send(Packet ack)
{
    engine_.schedule(prop_delay_, [this, ack = std::move(ack)]() { deliver_(ack); });
}

} // namespace fqsim
