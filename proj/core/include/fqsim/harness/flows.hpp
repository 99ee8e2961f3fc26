#pragma once

#include "fqsim/cca/settings.hpp"
#include "fqsim/cca/startup.hpp"
#include "fqsim/fqdetect/probe_connection.hpp"
#include "fqsim/harness/scenario.hpp"
#include "fqsim/transport/receiver.hpp"
#include "fqsim/transport/round_clock.hpp"
#include "fqsim/transport/sender.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace fqsim {

/// A scenario-level flow: one connection that may use several transport
/// flows (the probe uses two).
class FlowAgent
{
  public:
    virtual ~FlowAgent() = default;

    virtual void start() = 0;
    virtual std::vector<Sender*> senders() = 0;
    virtual const Sender& primary() const = 0;
    virtual std::string_view controller_name() const = 0;
    virtual std::optional<DetectionResult> detection() const { return std::nullopt; }
};

/**
 * Single transport flow: handshake, exponential startup until the first
 * lossy round, then the configured controller seeded with that round's
 * receiving rate.
 */
class ControlledFlow final : public FlowAgent
{
  public:
    ControlledFlow(Engine& engine, Dumbbell& net, FlowId flow, FlowKind kind, ControllerSettings controllers,
                   SenderConfig sender, double initial_pkts_per_rtt);

    void start() override;
    std::vector<Sender*> senders() override { return {&sender_}; }
    const Sender& primary() const override { return sender_; }
    std::string_view controller_name() const override;

    FlowKind kind() const { return kind_; }
    bool in_startup() const { return !controller_; }
    const RateController* controller() const { return controller_.get(); }

  private:
    void launch();
    Duration tick();
    void apply_controller();
    Duration round_length() const;

    Engine& engine_;
    FlowKind kind_;
    ControllerSettings controllers_;
    double initial_pkts_;
    Sender sender_;
    Receiver receiver_;
    RoundClock clock_;
    std::optional<StartupController> startup_;
    std::unique_ptr<RateController> controller_;
};

class ProbeFlow final : public FlowAgent
{
  public:
    ProbeFlow(Engine& engine, Dumbbell& net, FlowId primary, FlowId secondary, ProbeConnectionConfig config);

    void start() override { connection_.start(); }
    std::vector<Sender*> senders() override { return {&connection_.primary(), &connection_.secondary()}; }
    const Sender& primary() const override { return connection_.primary(); }
    std::string_view controller_name() const override;
    std::optional<DetectionResult> detection() const override { return connection_.result(); }

    ProbeConnection& connection() { return connection_; }

  private:
    ProbeConnection connection_;
};

} // namespace fqsim
