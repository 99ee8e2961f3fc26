#pragma once

#include "fqsim/netem/dumbbell.hpp"
#include "fqsim/transport/pacer.hpp"
#include "fqsim/transport/round_ledger.hpp"
#include "fqsim/transport/rtt_estimator.hpp"

#include <cstdint>
#include <deque>
#include <functional>

namespace fqsim {

struct SenderConfig
{
    std::uint32_t packet_bytes{kDefaultPacketBytes};
    /// A packet is declared lost once a packet this many sequence numbers
    /// later has been acknowledged.
    std::uint32_t reorder_window{3};
    /// Access-link ceiling; commanded rates above it are clamped.
    double max_rate_bps{1e9};
    bool jitter{false};
    Duration handshake_timeout{from_seconds(1.0)};
};

/// Lower bound of the stall timeout used with an in-flight cap.
inline constexpr Duration kMinStallTimeout{200'000'000};

/**
 * Rate-paced data sender with per-packet ACK processing.
 *
 * There is no retransmission: the sender tracks which sequence numbers were
 * acknowledged or declared lost, feeds RTT samples to its estimator and
 * accumulates per-round counters in a RoundLedger.
 */
class Sender
{
  public:
    using LossFn = std::function<void(std::uint64_t seq, SimTime sent_at)>;
    using AckFn = std::function<void(const Packet& ack, Duration rtt)>;

    Sender(Engine& engine, Dumbbell& net, FlowId flow, SenderConfig config, SeededRng pacing_rng);

    Sender(const Sender&) = delete;
    Sender& operator=(const Sender&) = delete;

    /// Sends a single packet and waits for its ACK to obtain an initial RTT
    /// sample, retrying after handshake_timeout. Calls `on_established` once.
    void handshake(std::function<void()> on_established);
    bool established() const { return established_; }

    /// Starts paced emission now, opening the first round with `round`.
    void start(double rate_bps, Duration round);
    void stop();
    bool sending() const { return sending_; }

    void set_rate(double rate_bps);
    double rate() const { return pacer_.rate(); }
    void set_jitter(bool enabled) { pacer_.set_jitter(enabled); }

    /// Caps unacknowledged packets (0 disables the cap). Emission pauses at
    /// the cap and resumes on the next ACK or loss; a pause longer than the
    /// retransmission timeout declares everything outstanding lost.
    void set_inflight_cap(double packets);
    double inflight_cap() const { return inflight_cap_; }
    bool jitter() const { return pacer_.jitter(); }

    RoundReport close_round(Duration next_duration);
    const RoundReport& current_round() const { return ledger_.current(); }
    /// Delivery of the packets sent in round `index` (see RoundLedger).
    std::optional<RoundReport> send_round_report(std::uint64_t index) const
    {
        return ledger_.send_round_report(index);
    }

    /// Declares every still-outstanding packet lost; for end-of-run
    /// accounting once the network has drained.
    void flush_losses();

    void on_loss(LossFn fn) { loss_listener_ = std::move(fn); }
    void on_ack_event(AckFn fn) { ack_listener_ = std::move(fn); }

    RttEstimator& rtt() { return rtt_; }
    const RttEstimator& rtt() const { return rtt_; }
    FlowId flow() const { return flow_; }
    const SenderConfig& config() const { return config_; }

    std::uint64_t packets_sent() const { return packets_sent_; }
    std::uint64_t packets_acked() const { return packets_acked_; }
    std::uint64_t packets_lost() const { return packets_lost_; }
    std::uint64_t bytes_acked() const { return bytes_acked_; }
    std::uint64_t outstanding() const;
    std::uint64_t highest_acked() const { return highest_acked_; }

  private:
    enum class State : std::uint8_t
    {
        outstanding,
        acked,
        lost,
    };

    struct Slot
    {
        SimTime sent_at;
        std::uint32_t size;
        State state;
        std::uint64_t round;
    };

    void handle_ack(const Packet& ack);
    void send_handshake();
    void emit();
    void schedule_next(Duration gap);
    void declare_lost(std::uint64_t seq, Slot& slot);
    void sweep_losses();
    void maybe_resume();
    void arm_stall_timer();
    void on_stall_timeout();
    Duration stall_timeout() const;

    Engine& engine_;
    Dumbbell& net_;
    FlowId flow_;
    SenderConfig config_;
    Pacer pacer_;
    RttEstimator rtt_;
    RoundLedger ledger_;

    std::uint64_t next_seq_{0};
    std::uint64_t data_start_seq_{UINT64_MAX};
    bool established_{false};
    std::function<void()> on_established_;

    bool sending_{false};
    EventHandle next_send_;
    SimTime last_send_{};
    SimTime next_send_at_{};

    double inflight_cap_{0.0};
    bool blocked_{false};
    EventHandle stall_timer_;
    std::uint64_t acked_at_block_{0};

    // Slots for [base_seq_, base_seq_ + slots_.size()).
    std::deque<Slot> slots_;
    std::uint64_t base_seq_{0};
    std::uint64_t highest_acked_{0};
    bool any_acked_{false};

    std::uint64_t packets_sent_{0};
    std::uint64_t packets_acked_{0};
    std::uint64_t packets_lost_{0};
    std::uint64_t bytes_acked_{0};

    LossFn loss_listener_;
    AckFn ack_listener_;
};

} // namespace fqsim
