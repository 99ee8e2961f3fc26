#pragma once

#include "fqsim/harness/run.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fqsim {

enum class CrossTraffic : std::uint8_t
{
    none,
    /// One Cubic bulk flow starting 5 s before the probe.
    cubic_headstart_5s,
};

/// Evenly spaced values over [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

struct GridSpec
{
    std::vector<double> bandwidths_mbps;
    std::vector<double> delays_ms;
    std::vector<std::uint32_t> buffers_pkts;
    std::vector<QdiscKind> qdiscs{QdiscKind::fifo, QdiscKind::fq};
    CrossTraffic cross_traffic{CrossTraffic::none};
    std::uint32_t repetitions{1};
    std::uint64_t base_seed{1};
    Tuning tuning{};

    /// 5 x 5 x 5 grid: 5..50 Mbps, 10..100 ms one-way, 1..100 packets.
    static GridSpec standard();
    std::size_t size() const;
};

void validate(const GridSpec& grid);

struct GridPoint
{
    std::size_t index{0};
    double bandwidth_mbps{0.0};
    double one_way_delay_ms{0.0};
    std::uint32_t buffer_pkts{0};
    QdiscKind qdisc{QdiscKind::fifo};
    std::uint32_t repetition{0};
    std::uint64_t seed{0};
};

/// Configurations in bandwidth-major order (bandwidth, delay, buffer, qdisc,
/// repetition); each seed is derived from the base seed and the index.
std::vector<GridPoint> enumerate(const GridSpec& grid);

struct AccuracyRun
{
    GridPoint point;
    DetectionResult detection;
    bool correct{false};
};

struct AccuracyReport
{
    bool cross_traffic{false};
    std::uint64_t base_seed{0};
    std::vector<AccuracyRun> runs;
    std::size_t true_fq{0};
    std::size_t false_fq{0};
    std::size_t true_fifo{0};
    std::size_t false_fifo{0};

    double accuracy() const;
    double fq_accuracy() const;
    double fifo_accuracy() const;
};

/// `jobs` = 0 uses the hardware concurrency. Results are assembled in
/// configuration order, so the report does not depend on `jobs`.
AccuracyReport run_accuracy_grid(const GridSpec& grid, unsigned jobs = 0);

struct ComparisonRow
{
    GridPoint point;
    std::string algorithm;
    double mean_throughput_mbps{0.0};
    double mean_rtt_ms{0.0};
    std::optional<bool> fq_detected;
};

struct AlgorithmAggregate
{
    std::string algorithm;
    std::size_t runs{0};
    double mean_throughput_mbps{0.0};
    double mean_rtt_ms{0.0};
    /// Mean throughput over configurations with buffer <= 25 packets.
    double small_buffer_mean_throughput_mbps{0.0};
};

struct ComparisonReport
{
    std::uint64_t base_seed{0};
    double duration_s{0.0};
    std::vector<ComparisonRow> rows;
    std::vector<AlgorithmAggregate> aggregates;
    std::size_t fq_detected_runs{0};

    const AlgorithmAggregate& aggregate(std::string_view algorithm) const;
};

inline constexpr std::uint32_t kSmallBufferPkts = 25;

/// Runs one Cubic flow and one probe flow per configuration. Every qdisc in
/// the grid must be fq; throws std::invalid_argument otherwise.
ComparisonReport run_comparison(const GridSpec& grid, double duration_s = 30.0, unsigned jobs = 0);

/// 50 Mbps / 10 ms / 100 packets. Cubic starts at 0 s, a delay-based flow
/// (no probe) at 5 s.
Scenario starvation_scenario(QdiscKind qdisc, std::uint64_t seed = 1, double duration_s = 30.0);
RunOutput run_starvation_demo(QdiscKind qdisc, std::uint64_t seed = 1, double duration_s = 30.0);

struct PacingPathologySetup
{
    double bandwidth_mbps{10.0};
    double one_way_delay_ms{10.0};
    std::uint32_t buffer_pkts{100};
    /// Flow 1 rate as a fraction of the link; flow 2 sends twice as fast.
    double flow1_share{0.55};
    /// Flow 1 starts this much after flow 2.
    Duration phase_offset{1'000};
    double measure_from_s{2.0};
    double measure_to_s{6.0};
    std::uint64_t seed{1};
};

struct PacingPathologyResult
{
    double goodput1_mbps{0.0};
    double goodput2_mbps{0.0};
    double ratio() const { return goodput2_mbps > 0.0 ? goodput1_mbps / goodput2_mbps : 0.0; }
};

/// Two constant-rate flows at (r, 2r) into a shared drop-tail queue, with
/// strict or jittered pacing; goodput measured at the receivers.
PacingPathologyResult run_pacing_pathology(bool jitter, const PacingPathologySetup& setup = {});

} // namespace fqsim
