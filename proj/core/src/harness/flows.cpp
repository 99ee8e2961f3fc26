#include "fqsim/harness/flows.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fqsim {

ControlledFlow::ControlledFlow(Engine& engine, Dumbbell& net, FlowId flow, FlowKind kind,
                               ControllerSettings controllers, SenderConfig sender, double initial_pkts_per_rtt)
    : engine_{engine},
      kind_{kind},
      controllers_{controllers},
      initial_pkts_{initial_pkts_per_rtt},
      sender_{engine, net, flow, sender, engine.rng("pacer/" + std::to_string(flow))},
      receiver_{net, flow},
      clock_{engine, [this]() { return tick(); }}
{
    if (kind == FlowKind::probe)
    {
        throw std::invalid_argument{"ControlledFlow does not run the probe; use ProbeFlow"};
    }
    sender_.on_loss([this](std::uint64_t, SimTime sent_at) {
        if (controller_)
        {
            controller_->on_loss(engine_.now(), sent_at, sender_.rtt());
            apply_controller();
        }
    });
}

void
ControlledFlow::start()
{
    sender_.handshake([this]() { launch(); });
}

std::string_view
ControlledFlow::controller_name() const
{
    return controller_ ? controller_->name() : std::string_view{"startup"};
}

Duration
ControlledFlow::round_length() const
{
    return std::max(sender_.rtt().srtt(), RoundClock::kMinRound);
}

void
ControlledFlow::launch()
{
    const double bits = sender_.config().packet_bytes * 8.0;
    const Duration round = round_length();
    startup_.emplace(controllers_.limits, initial_pkts_ * bits / to_seconds(round));
    sender_.start(startup_->rate_bps(), round);
    clock_.start(round);
}

Duration
ControlledFlow::tick()
{
    const Duration next = round_length();
    const RoundReport report = sender_.close_round(next);
    if (controller_)
    {
        controller_->on_round(report, sender_.rtt());
        apply_controller();
        return next;
    }

    const double rate = startup_->on_round(report, sender_.rtt());
    if (!startup_->exited())
    {
        sender_.set_rate(rate);
        return next;
    }
    switch (kind_)
    {
    case FlowKind::cubic:
        controller_ = std::make_unique<CubicController>(CubicController::after_startup(
            controllers_.limits, controllers_.cubic, rate, sender_.rtt().srtt(), engine_.now()));
        break;
    case FlowKind::delay_based:
        controller_ = std::make_unique<DelayBasedController>(controllers_.limits, controllers_.delay, rate);
        break;
    case FlowKind::pcc_like:
        controller_ = std::make_unique<PccLikeController>(controllers_.limits, controllers_.pcc, rate);
        break;
    case FlowKind::probe:
        break;
    }
    apply_controller();
    return next;
}

void
ControlledFlow::apply_controller()
{
    sender_.set_rate(controller_->rate_bps());
    sender_.set_inflight_cap(controller_->inflight_cap_pkts());
}

ProbeFlow::ProbeFlow(Engine& engine, Dumbbell& net, FlowId primary, FlowId secondary, ProbeConnectionConfig config)
    : connection_{engine, net, primary, secondary, config}
{
}

std::string_view
ProbeFlow::controller_name() const
{
    const RateController* c = connection_.controller();
    return c ? c->name() : std::string_view{"probe"};
}

} // namespace fqsim
