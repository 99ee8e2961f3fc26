#pragma once

#include "fqsim/sim/time.hpp"
#include "fqsim/transport/round_ledger.hpp"

#include <cstdint>
#include <optional>
#include <variant>

namespace fqsim {

struct ProbeConfig
{
    /// Flow 1 starts at this many packets per handshake RTT.
    double initial_pkts_per_rtt{10.0};
    double rate_ratio{2.0};
    double cutoff{1.5};
    std::uint32_t max_rounds{20};
    /// Consecutive joint-loss rounds required after the first one before a
    /// verdict; rates are held meanwhile and the ratio comes from the last
    /// of them. 0 decides on the first joint-loss round.
    std::uint32_t confirm_rounds{1};
};

/// Throws std::invalid_argument for out-of-range fields.
void validate(const ProbeConfig& config);

struct DetectionResult
{
    /// Absent only when the probe timed out without a joint-loss round.
    std::optional<double> loss_ratio;
    bool fq_detected{false};
    std::uint32_t rounds_used{0};
    double combined_handover_rate_bps{0.0};
    bool timed_out{false};
    SimTime decided_at{};
};

struct ProbeContinue
{
    double rate1_bps{0.0};
    double rate2_bps{0.0};
    /// True when a joint-loss round was skipped for lack of usable goodput.
    bool degenerate{false};
    /// True while rates are held to confirm a joint-loss round.
    bool confirming{false};
};

using ProbeStep = std::variant<ProbeContinue, DetectionResult>;

/**
 * Dual-flow fair-queuing probe, independent of the simulator.
 *
 * Flow 2 is always commanded at rate_ratio times flow 1. Both rates double
 * after every round that did not show loss in both flows. A round with loss
 * in both flows starts a streak; once confirm_rounds further joint-loss
 * rounds follow (rates held), the last one yields the verdict
 * `loss_ratio >= cutoff`. A lossless round ends the streak and doubling
 * resumes. After max_rounds rounds without a verdict the probe gives up and
 * reports no fair queuing.
 */
class FqProbe
{
  public:
    FqProbe(ProbeConfig config, double initial_rate_bps, double max_rate_bps = 1e9);

    /// `now` stamps a verdict; it defaults to the end of the reported round.
    ProbeStep on_round(const RoundReport& flow1, const RoundReport& flow2, std::optional<SimTime> now = std::nullopt);

    double rate1() const { return rate1_; }
    double rate2() const { return rate1_ * config_.rate_ratio; }
    bool decided() const { return result_.has_value(); }
    const std::optional<DetectionResult>& result() const { return result_; }
    std::uint32_t rounds() const { return rounds_; }
    const ProbeConfig& config() const { return config_; }

  private:
    DetectionResult decide(std::optional<double> ratio, const RoundReport& f1, const RoundReport& f2, bool timed_out,
                           SimTime at);

    ProbeConfig config_;
    double max_rate1_;
    double rate1_;
    std::uint32_t rounds_{0};
    std::uint32_t joint_streak_{0};
    std::optional<DetectionResult> result_;
};

} // namespace fqsim
