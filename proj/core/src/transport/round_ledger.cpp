#include "fqsim/transport/round_ledger.hpp"

#include <stdexcept>

namespace fqsim {

double
RoundReport::loss_fraction() const
{
    const std::uint64_t resolved = packets_acked + packets_lost;
    return resolved == 0 ? 0.0 : static_cast<double>(packets_lost) / static_cast<double>(resolved);
}

void
RoundLedger::begin(SimTime start, Duration duration)
{
    if (duration <= Duration::zero())
    {
        throw std::invalid_argument{"RoundLedger: round duration must be positive"};
    }
    current_ = RoundReport{};
    current_.start = start;
    current_.duration = duration;
    open_ = true;
    by_send_round_.clear();
    by_send_round_.push_back(current_);
}

void
RoundLedger::on_sent(std::uint32_t bytes)
{
    current_.bytes_sent += bytes;
    ++current_.packets_sent;
    by_send_round_.back().bytes_sent += bytes;
    ++by_send_round_.back().packets_sent;
}

RoundReport*
RoundLedger::send_round(std::uint64_t index)
{
    if (by_send_round_.empty() || index < by_send_round_.front().round_index)
    {
        return nullptr;
    }
    const std::uint64_t offset = index - by_send_round_.front().round_index;
    return offset < by_send_round_.size() ? &by_send_round_[offset] : nullptr;
}

void
RoundLedger::on_acked(std::uint32_t bytes, std::uint64_t sent_round)
{
    current_.bytes_acked += bytes;
    ++current_.packets_acked;
    if (RoundReport* r = send_round(sent_round))
    {
        r->bytes_acked += bytes;
        ++r->packets_acked;
    }
}

void
RoundLedger::on_lost(std::uint64_t sent_round)
{
    ++current_.packets_lost;
    if (RoundReport* r = send_round(sent_round))
    {
        ++r->packets_lost;
    }
}

std::optional<RoundReport>
RoundLedger::send_round_report(std::uint64_t index) const
{
    if (by_send_round_.empty() || index < by_send_round_.front().round_index)
    {
        return std::nullopt;
    }
    const std::uint64_t offset = index - by_send_round_.front().round_index;
    if (offset >= by_send_round_.size())
    {
        return std::nullopt;
    }
    RoundReport r = by_send_round_[offset];
    const double seconds = to_seconds(r.duration);
    r.sending_rate_bps = static_cast<double>(r.bytes_sent) * 8.0 / seconds;
    r.receiving_rate_bps = static_cast<double>(r.bytes_acked) * 8.0 / seconds;
    return r;
}

RoundReport
RoundLedger::close(SimTime now, Duration next_duration)
{
    if (!open_)
    {
        throw std::logic_error{"RoundLedger::close without begin"};
    }
    if (next_duration <= Duration::zero())
    {
        throw std::invalid_argument{"RoundLedger: round duration must be positive"};
    }
    RoundReport frozen = current_;
    const double seconds = to_seconds(frozen.duration);
    frozen.sending_rate_bps = static_cast<double>(frozen.bytes_sent) * 8.0 / seconds;
    frozen.receiving_rate_bps = static_cast<double>(frozen.bytes_acked) * 8.0 / seconds;

    current_ = RoundReport{};
    current_.round_index = frozen.round_index + 1;
    current_.start = now;
    current_.duration = next_duration;
    by_send_round_.push_back(current_);
    while (by_send_round_.size() > kHistory)
    {
        by_send_round_.pop_front();
    }
    return frozen;
}

} // namespace fqsim
