#include "fqsim/fqdetect/probe_connection.hpp"

#include <algorithm>
#include <string>

namespace fqsim {

ProbeConnection::ProbeConnection(Engine& engine, Dumbbell& net, FlowId primary, FlowId secondary,
                                 ProbeConnectionConfig config)
    : engine_{engine},
      config_{config},
      primary_{engine, net, primary, config.sender, engine.rng("pacer/" + std::to_string(primary))},
      secondary_{engine, net, secondary, config.sender, engine.rng("pacer/" + std::to_string(secondary))},
      primary_rx_{net, primary},
      secondary_rx_{net, secondary},
      clock_{engine, [this]() { return tick(); }}
{
    validate(config_.probe);
    primary_.on_loss([this](std::uint64_t, SimTime sent_at) {
        if (controller_)
        {
            controller_->on_loss(engine_.now(), sent_at, primary_.rtt());
            primary_.set_rate(controller_->rate_bps());
        }
    });
}

void
ProbeConnection::start()
{
    if (phase_ != Phase::idle)
    {
        return;
    }
    phase_ = Phase::handshake;
    primary_.handshake([this]() { launch(); });
}

Duration
ProbeConnection::round_length() const
{
    return std::max(primary_.rtt().srtt(), RoundClock::kMinRound);
}

void
ProbeConnection::launch()
{
    const double bits = config_.sender.packet_bytes * 8.0;
    const double initial = config_.probe.initial_pkts_per_rtt * bits / to_seconds(round_length());
    probe_.emplace(config_.probe, initial, config_.sender.max_rate_bps);

    phase_ = Phase::probing;
    const Duration round = round_length();
    // Jittered pacing is mandatory while probing.
    primary_.set_jitter(true);
    secondary_.set_jitter(true);
    primary_.start(probe_->rate1(), round);
    secondary_.start(probe_->rate2(), round);
    clock_.start(round);
}

Duration
ProbeConnection::tick()
{
    const Duration next = round_length();
    if (phase_ == Phase::probing)
    {
        // Judge the round before the one just closed: its packets have had a
        // full round for their ACKs to return. At the first boundary there
        // is no such round, and the just-closed one (no feedback yet, hence
        // lossless) stands in so the schedule still doubles every round.
        const std::uint64_t closed = primary_.close_round(next).round_index;
        secondary_.close_round(next);
        const std::uint64_t judged = closed == 0 ? 0 : closed - 1;
        RoundTrace t;
        t.flow1 = primary_.send_round_report(judged).value();
        t.flow2 = secondary_.send_round_report(judged).value();
        ProbeStep step = probe_->on_round(t.flow1, t.flow2, engine_.now());
        if (auto* cont = std::get_if<ProbeContinue>(&step))
        {
            primary_.set_rate(cont->rate1_bps);
            secondary_.set_rate(cont->rate2_bps);
            t.next_rate1_bps = cont->rate1_bps;
            t.next_rate2_bps = cont->rate2_bps;
            trace_.push_back(t);
        }
        else
        {
            trace_.push_back(t);
            handover(std::get<DetectionResult>(step));
        }
        return next;
    }

    const RoundReport report = primary_.close_round(next);
    if (controller_)
    {
        primary_.set_rate(controller_->on_round(report, primary_.rtt()));
    }
    return next;
}

void
ProbeConnection::handover(const DetectionResult& result)
{
    result_ = result;
    phase_ = Phase::handed_over;
    secondary_.stop();
    if (secondary_.rtt().has_sample())
    {
        primary_.rtt().merge_min(secondary_.rtt().min());
    }
    const ControllerSettings& s = config_.controllers;
    const double rate = result.combined_handover_rate_bps;
    if (result.fq_detected)
    {
        controller_ = std::make_unique<DelayBasedController>(s.limits, s.delay, rate);
    }
    else
    {
        controller_ = std::make_unique<PccLikeController>(s.limits, s.pcc, rate);
    }
    primary_.set_jitter(config_.sender.jitter);
    primary_.set_rate(controller_->rate_bps());
    trace_.back().next_rate1_bps = controller_->rate_bps();
    trace_.back().next_rate2_bps = 0.0;
    if (on_decision_)
    {
        on_decision_(result);
    }
}

} // namespace fqsim
