#include "fqsim/netem/dumbbell.hpp"

#include <stdexcept>
#include <string>

namespace fqsim {

Dumbbell::Dumbbell(Engine& engine, LinkConfig config)
    : engine_{engine},
      forward_{engine, config, [this](const Packet& p) { to_receiver(p); }},
      reverse_{engine, config.prop_delay, [this](const Packet& p) { to_sender(p); }}
{
}

namespace {

void
attach_to(std::vector<Dumbbell::Handler>& table, FlowId flow, Dumbbell::Handler handler)
{
    if (flow >= table.size())
    {
        table.resize(flow + 1);
    }
    if (table[flow])
    {
        throw std::invalid_argument{"Dumbbell: endpoint already attached for flow " +
                                    std::to_string(flow)};
    }
    table[flow] = std::move(handler);
}

} // namespace

void
Dumbbell::attach_receiver(FlowId flow, Handler handler)
{
    attach_to(receivers_, flow, std::move(handler));
}

void
Dumbbell::attach_sender(FlowId flow, Handler handler)
{
    attach_to(senders_, flow, std::move(handler));
}

void
Dumbbell::to_receiver(const Packet& pkt)
{
    if (pkt.flow < receivers_.size() && receivers_[pkt.flow])
    {
        receivers_[pkt.flow](pkt);
    }
}

void
Dumbbell::to_sender(const Packet& ack)
{
    if (ack.flow < senders_.size() && senders_[ack.flow])
    {
        senders_[ack.flow](ack);
    }
}

} // namespace fqsim
