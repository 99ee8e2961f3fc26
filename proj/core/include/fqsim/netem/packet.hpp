#pragma once

#include "fqsim/sim/time.hpp"

#include <cstdint>
#include <optional>

namespace fqsim {

using FlowId = std::uint32_t;

inline constexpr std::uint32_t kDefaultPacketBytes = 1500;

enum class PacketKind : std::uint8_t
{
    data,
    ack,
};

/// A simulated datagram. ACKs echo the data packet's `sent_at` so the sender
/// can take an RTT sample without per-packet state.
struct Packet
{
    FlowId flow{0};
    std::uint64_t seq{0};
    std::uint32_t size_bytes{kDefaultPacketBytes};
    SimTime sent_at{};
    PacketKind kind{PacketKind::data};
    std::optional<std::uint64_t> acked_seq;
};

} // namespace fqsim
