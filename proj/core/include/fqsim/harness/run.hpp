#pragma once

#include "fqsim/fqdetect/probe.hpp"
#include "fqsim/harness/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fqsim {

struct FlowSummary
{
    std::size_t index{0};
    FlowKind kind{FlowKind::probe};
    std::string controller;
    double start_time_s{0.0};
    double mean_throughput_mbps{0.0};
    double mean_rtt_ms{0.0};
    double p95_rtt_ms{0.0};
    std::uint64_t loss_count{0};
    std::uint64_t packets_sent{0};
    std::uint64_t packets_acked{0};
    std::optional<DetectionResult> detection;
};

struct RunSummary
{
    Scenario scenario;
    std::uint64_t seed{0};
    double end_time_s{0.0};
    std::vector<FlowSummary> flows;
    /// Verdict of the first probe flow, if any.
    std::optional<DetectionResult> detection;
};

/// Throughput over the trailing sampling window and the latest RTT.
struct SeriesSample
{
    double time_s{0.0};
    std::uint32_t flow_id{0};
    double throughput_mbps{0.0};
    double rtt_ms{0.0};

    bool operator==(const SeriesSample&) const = default;
};

using TimeSeries = std::vector<SeriesSample>;

struct RttSample
{
    SimTime at;
    Duration rtt;
};

struct RunOptions
{
    /// End the run as soon as the first probe flow reaches a verdict.
    bool stop_on_detection{false};
    bool collect_series{true};
    bool collect_rtt_traces{true};
    Duration series_window{from_millis(100)};
};

struct RunOutput
{
    RunSummary summary;
    TimeSeries series;
    /// Per scenario flow, every RTT sample taken from a data ACK.
    std::vector<std::vector<RttSample>> rtt_traces;
};

/// Throws ValidationError for an invalid scenario. Deterministic in the seed.
RunOutput run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Mean of the windowed throughput samples of `flow_id` with t in (t0, t1].
double mean_series_throughput(const TimeSeries& series, std::uint32_t flow_id, double t0_s, double t1_s);

/// p-quantile (nearest rank) of the RTT samples taken strictly after `after`.
double rtt_quantile_ms(const std::vector<RttSample>& trace, double p, SimTime after = kSimStart);
double rtt_mean_ms(const std::vector<RttSample>& trace, SimTime after = kSimStart);

} // namespace fqsim
