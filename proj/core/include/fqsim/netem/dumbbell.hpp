#pragma once

#include "fqsim/netem/link.hpp"

#include <functional>
#include <vector>

namespace fqsim {

/// Sender hosts -> bottleneck -> receiver hosts, with an ideal ACK path.
/// Endpoints register per flow id; the topology only routes by flow.
class Dumbbell
{
  public:
    using Handler = std::function<void(const Packet&)>;

    Dumbbell(Engine& engine, LinkConfig config);

    Dumbbell(const Dumbbell&) = delete;
    Dumbbell& operator=(const Dumbbell&) = delete;

    /// Throws std::invalid_argument if the endpoint is already attached.
    void attach_receiver(FlowId flow, Handler handler);
    void attach_sender(FlowId flow, Handler handler);

    EnqueueResult send_data(Packet pkt) { return forward_.send(std::move(pkt)); }
    void send_ack(Packet ack) { reverse_.send(std::move(ack)); }

    BottleneckLink& bottleneck() { return forward_; }
    const BottleneckLink& bottleneck() const { return forward_; }
    const LinkConfig& config() const { return forward_.config(); }
    Engine& engine() { return engine_; }

  private:
    void to_receiver(const Packet& pkt);
    void to_sender(const Packet& ack);

    Engine& engine_;
    std::vector<Handler> receivers_;
    std::vector<Handler> senders_;
    BottleneckLink forward_;
    ReversePath reverse_;
};

} // namespace fqsim
