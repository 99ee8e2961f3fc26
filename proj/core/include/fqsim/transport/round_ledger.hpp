#pragma once

#include "fqsim/sim/time.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>

namespace fqsim {

/// Frozen per-round counters of one flow. Rates use the round's planned
/// duration (the srtt at round start).
struct RoundReport
{
    std::uint64_t round_index{0};
    SimTime start{};
    Duration duration{0};
    std::uint64_t bytes_sent{0};
    std::uint64_t bytes_acked{0};
    std::uint64_t packets_sent{0};
    std::uint64_t packets_acked{0};
    std::uint64_t packets_lost{0};
    double sending_rate_bps{0.0};
    double receiving_rate_bps{0.0};

    bool lost() const { return packets_lost > 0; }
    SimTime end() const { return start + duration; }

    /// Lost share of the packets resolved (acked or declared lost) in the
    /// round; 0 when nothing was resolved.
    double loss_fraction() const;
};

/**
 * Per-round counters, kept two ways.
 *
 * The current round counts everything that happens while it is open: bytes
 * sent, ACKs received and losses detected. Separately, each ACK and loss is
 * credited to the round its packet was sent in, so that round's delivery
 * can be read back once the feedback has arrived (send_round_report).
 */
class RoundLedger
{
  public:
    /// Send-round records kept after their round closed.
    static constexpr std::size_t kHistory = 16;

    void begin(SimTime start, Duration duration);
    bool open() const { return open_; }

    void on_sent(std::uint32_t bytes);
    void on_acked(std::uint32_t bytes, std::uint64_t sent_round);
    void on_lost(std::uint64_t sent_round);

    /// Packets sent in round `index` with the ACKs and losses resolved for
    /// them so far; rates use that round's planned duration. Empty when the
    /// round is unknown or has aged out of the history.
    std::optional<RoundReport> send_round_report(std::uint64_t index) const;

    /// Freezes the current round, resets the counters and opens the next
    /// round at `now` lasting `next_duration`.
    RoundReport close(SimTime now, Duration next_duration);

    std::uint64_t round_index() const { return current_.round_index; }
    const RoundReport& current() const { return current_; }

  private:
    RoundReport* send_round(std::uint64_t index);

    RoundReport current_{};
    bool open_{false};
    // Back entry mirrors the current round's send counters.
    std::deque<RoundReport> by_send_round_;
};

} // namespace fqsim
