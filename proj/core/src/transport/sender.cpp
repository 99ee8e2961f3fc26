#include "fqsim/transport/sender.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fqsim {

Sender::Sender(Engine& engine, Dumbbell& net, FlowId flow, SenderConfig config, SeededRng pacing_rng)
    : engine_{engine},
      net_{net},
      flow_{flow},
      config_{config},
      pacer_{std::min(1e6, config.max_rate_bps), config.jitter, std::move(pacing_rng)}
{
    if (config_.packet_bytes == 0)
    {
        throw std::invalid_argument{"Sender: packet_bytes must be > 0"};
    }
    if (!(config_.max_rate_bps > 0.0))
    {
        throw std::invalid_argument{"Sender: max_rate_bps must be > 0"};
    }
    net_.attach_sender(flow_, [this](const Packet& ack) { handle_ack(ack); });
}

void
Sender::handshake(std::function<void()> on_established)
{
    on_established_ = std::move(on_established);
    send_handshake();
}

void
Sender::send_handshake()
{
    if (established_)
    {
        return;
    }
    Packet pkt;
    pkt.flow = flow_;
    pkt.seq = next_seq_++;
    pkt.size_bytes = config_.packet_bytes;
    pkt.sent_at = engine_.now();
    pkt.kind = PacketKind::data;
    net_.send_data(pkt);
    engine_.schedule(config_.handshake_timeout, [this]() { send_handshake(); });
}

void
Sender::start(double rate_bps, Duration round)
{
    if (sending_)
    {
        return;
    }
    if (data_start_seq_ == UINT64_MAX)
    {
        data_start_seq_ = next_seq_;
        base_seq_ = next_seq_;
    }
    set_rate(rate_bps);
    ledger_.begin(engine_.now(), round);
    sending_ = true;
    emit();
}

void
Sender::stop()
{
    sending_ = false;
    blocked_ = false;
    engine_.cancel(next_send_);
    engine_.cancel(stall_timer_);
    next_send_ = EventHandle{};
    stall_timer_ = EventHandle{};
}

void
Sender::set_inflight_cap(double packets)
{
    if (!(packets >= 0.0) || !std::isfinite(packets))
    {
        throw std::invalid_argument{"Sender::set_inflight_cap: cap must be finite and >= 0"};
    }
    inflight_cap_ = packets;
    maybe_resume();
}

Duration
Sender::stall_timeout() const
{
    return std::max(3 * rtt_.srtt(), kMinStallTimeout);
}

void
Sender::arm_stall_timer()
{
    engine_.cancel(stall_timer_);
    acked_at_block_ = packets_acked_ + packets_lost_;
    stall_timer_ = engine_.schedule(stall_timeout(), [this]() {
        stall_timer_ = EventHandle{};
        on_stall_timeout();
    });
}

void
Sender::on_stall_timeout()
{
    if (!blocked_)
    {
        return;
    }
    if (packets_acked_ + packets_lost_ != acked_at_block_)
    {
        arm_stall_timer();
        return;
    }
    flush_losses();
    maybe_resume();
}

void
Sender::maybe_resume()
{
    if (!blocked_ || !sending_)
    {
        return;
    }
    if (inflight_cap_ > 0.0 && static_cast<double>(outstanding()) >= inflight_cap_)
    {
        return;
    }
    blocked_ = false;
    engine_.cancel(stall_timer_);
    stall_timer_ = EventHandle{};
    // Deferred so ACK and loss processing never re-enter emit().
    schedule_next(Duration::zero());
}

void
Sender::set_rate(double rate_bps)
{
    if (!std::isfinite(rate_bps) || rate_bps <= 0.0)
    {
        throw std::invalid_argument{"Sender::set_rate: rate must be finite and positive"};
    }
    const double old_rate = pacer_.rate();
    const double new_rate = std::min(rate_bps, config_.max_rate_bps);
    pacer_.set_rate(new_rate);
    if (!sending_ || !next_send_.valid() || new_rate == old_rate)
    {
        return;
    }
    // Rescale the gap still pending so a rate change applies immediately.
    const SimTime now = engine_.now();
    const Duration remaining = next_send_at_ - now;
    if (remaining <= Duration::zero())
    {
        return;
    }
    const auto scaled = Duration{std::llround(static_cast<double>(remaining.count()) * old_rate / new_rate)};
    engine_.cancel(next_send_);
    schedule_next(scaled);
}

void
Sender::schedule_next(Duration gap)
{
    next_send_at_ = engine_.now() + gap;
    next_send_ = engine_.schedule(gap, [this]() {
        next_send_ = EventHandle{};
        emit();
    });
}

void
Sender::emit()
{
    if (!sending_)
    {
        return;
    }
    if (inflight_cap_ > 0.0 && static_cast<double>(outstanding()) >= inflight_cap_)
    {
        blocked_ = true;
        arm_stall_timer();
        return;
    }
    const SimTime now = engine_.now();
    Packet pkt;
    pkt.flow = flow_;
    pkt.seq = next_seq_++;
    pkt.size_bytes = config_.packet_bytes;
    pkt.sent_at = now;
    pkt.kind = PacketKind::data;

    slots_.push_back(Slot{now, pkt.size_bytes, State::outstanding, ledger_.round_index()});
    ++packets_sent_;
    ledger_.on_sent(pkt.size_bytes);
    last_send_ = now;
    net_.send_data(pkt);

    schedule_next(pacer_.next_gap(config_.packet_bytes));
}

void
Sender::handle_ack(const Packet& ack)
{
    if (ack.kind != PacketKind::ack || !ack.acked_seq)
    {
        return;
    }
    const SimTime now = engine_.now();
    const std::uint64_t seq = *ack.acked_seq;
    const Duration sample = now - ack.sent_at;

    if (seq < data_start_seq_)
    {
        rtt_.add_sample(sample);
        if (!established_)
        {
            established_ = true;
            if (on_established_)
            {
                auto cb = std::move(on_established_);
                on_established_ = nullptr;
                cb();
            }
        }
        return;
    }
    if (seq < base_seq_ || seq - base_seq_ >= slots_.size())
    {
        return;
    }
    Slot& slot = slots_[seq - base_seq_];
    if (slot.state != State::outstanding)
    {
        return;
    }
    slot.state = State::acked;
    rtt_.add_sample(sample);
    ++packets_acked_;
    bytes_acked_ += slot.size;
    if (ledger_.open())
    {
        ledger_.on_acked(slot.size, slot.round);
    }
    if (!any_acked_ || seq > highest_acked_)
    {
        highest_acked_ = seq;
        any_acked_ = true;
    }
    if (ack_listener_)
    {
        ack_listener_(ack, sample);
    }
    sweep_losses();
    maybe_resume();
}

void
Sender::declare_lost(std::uint64_t seq, Slot& slot)
{
    slot.state = State::lost;
    ++packets_lost_;
    if (ledger_.open())
    {
        ledger_.on_lost(slot.round);
    }
    if (loss_listener_)
    {
        loss_listener_(seq, slot.sent_at);
    }
}

void
Sender::sweep_losses()
{
    while (!slots_.empty())
    {
        Slot& front = slots_.front();
        if (front.state == State::outstanding)
        {
            if (base_seq_ + config_.reorder_window > highest_acked_)
            {
                break;
            }
            declare_lost(base_seq_, front);
        }
        slots_.pop_front();
        ++base_seq_;
    }
}

void
Sender::flush_losses()
{
    for (std::size_t i = 0; i < slots_.size(); ++i)
    {
        if (slots_[i].state == State::outstanding)
        {
            declare_lost(base_seq_ + i, slots_[i]);
        }
    }
    base_seq_ += slots_.size();
    slots_.clear();
}

RoundReport
Sender::close_round(Duration next_duration)
{
    return ledger_.close(engine_.now(), next_duration);
}

std::uint64_t
Sender::outstanding() const
{
    return packets_sent_ - packets_acked_ - packets_lost_;
}

} // namespace fqsim
