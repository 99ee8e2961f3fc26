#pragma once

#include "fqsim/cca/settings.hpp"
#include "fqsim/fqdetect/probe.hpp"
#include "fqsim/transport/receiver.hpp"
#include "fqsim/transport/round_clock.hpp"
#include "fqsim/transport/sender.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace fqsim {

struct ProbeConnectionConfig
{
    ProbeConfig probe{};
    SenderConfig sender{};
    ControllerSettings controllers{};
};

/**
 * A connection that opens with the dual-flow probe and then continues on
 * the primary flow alone.
 *
 * The primary flow performs the handshake; both flows then start together
 * with jittered pacing at (r, ratio*r) and share the primary's round clock.
 * On a verdict the secondary stops, the primary inherits the smaller of the
 * two minimum RTTs and switches to the delay-based controller (fair queuing)
 * or the PCC-like controller (shared queue) at the summed receiving rate.
 */
class ProbeConnection
{
  public:
    enum class Phase : std::uint8_t
    {
        idle,
        handshake,
        probing,
        handed_over,
    };

    struct RoundTrace
    {
        RoundReport flow1;
        RoundReport flow2;
        double next_rate1_bps{0.0};
        double next_rate2_bps{0.0};
    };

    using DecisionFn = std::function<void(const DetectionResult&)>;

    ProbeConnection(Engine& engine, Dumbbell& net, FlowId primary, FlowId secondary, ProbeConnectionConfig config);

    ProbeConnection(const ProbeConnection&) = delete;
    ProbeConnection& operator=(const ProbeConnection&) = delete;

    void start();
    void on_decision(DecisionFn fn) { on_decision_ = std::move(fn); }

    Phase phase() const { return phase_; }
    const std::optional<DetectionResult>& result() const { return result_; }
    const RateController* controller() const { return controller_.get(); }
    const std::vector<RoundTrace>& rounds() const { return trace_; }

    Sender& primary() { return primary_; }
    Sender& secondary() { return secondary_; }
    const Sender& primary() const { return primary_; }
    const Sender& secondary() const { return secondary_; }

  private:
    void launch();
    Duration tick();
    void handover(const DetectionResult& result);
    Duration round_length() const;

    Engine& engine_;
    ProbeConnectionConfig config_;
    Sender primary_;
    Sender secondary_;
    Receiver primary_rx_;
    Receiver secondary_rx_;
    RoundClock clock_;
    Phase phase_{Phase::idle};
    std::optional<FqProbe> probe_;
    std::optional<DetectionResult> result_;
    std::unique_ptr<RateController> controller_;
    std::vector<RoundTrace> trace_;
    DecisionFn on_decision_;
};

} // namespace fqsim
