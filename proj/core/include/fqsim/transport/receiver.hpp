#pragma once

#include "fqsim/netem/dumbbell.hpp"

#include <cstdint>

namespace fqsim {

inline constexpr std::uint32_t kAckBytes = 40;

/// Acknowledges every data packet immediately, echoing its send timestamp.
class Receiver
{
  public:
    Receiver(Dumbbell& net, FlowId flow);

    Receiver(const Receiver&) = delete;
    Receiver& operator=(const Receiver&) = delete;

    std::uint64_t packets_received() const { return packets_; }
    std::uint64_t bytes_received() const { return bytes_; }

  private:
    void on_data(const Packet& pkt);

    Dumbbell& net_;
    FlowId flow_;
    std::uint64_t packets_{0};
    std::uint64_t bytes_{0};
    std::uint64_t ack_seq_{0};
};

} // namespace fqsim
