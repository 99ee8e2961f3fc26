#include "fqsim/transport/receiver.hpp"

namespace fqsim {

Receiver::Receiver(Dumbbell& net, FlowId flow)
    : net_{net},
      flow_{flow}
{
    net_.attach_receiver(flow_, [this](const Packet& p) { on_data(p); });
}

void
Receiver::on_data(const Packet& pkt)
{
    if (pkt.kind != PacketKind::data)
    {
        return;
    }
    ++packets_;
    bytes_ += pkt.size_bytes;

    Packet ack;
    ack.flow = flow_;
    ack.seq = ack_seq_++;
    ack.size_bytes = kAckBytes;
    ack.sent_at = pkt.sent_at;
    ack.kind = PacketKind::ack;
    ack.acked_seq = pkt.seq;
    net_.send_ack(ack);
}

} // namespace fqsim
