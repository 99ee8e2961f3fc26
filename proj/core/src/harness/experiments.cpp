#include "fqsim/harness/experiments.hpp"

#include "fqsim/transport/receiver.hpp"
#include "fqsim/transport/sender.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace fqsim {

std::vector<double>
linspace(double lo, double hi, std::size_t count)
{
    std::vector<double> v;
    if (count == 0)
    {
        return v;
    }
    if (count == 1)
    {
        v.push_back(lo);
        return v;
    }
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return v;
}

GridSpec
GridSpec::standard()
{
    GridSpec g;
    g.bandwidths_mbps = linspace(5.0, 50.0, 5);
    g.delays_ms = linspace(10.0, 100.0, 5);
    for (double b : linspace(1.0, 100.0, 5))
    {
        g.buffers_pkts.push_back(static_cast<std::uint32_t>(std::llround(b)));
    }
    return g;
}

std::size_t
GridSpec::size() const
{
    return bandwidths_mbps.size() * delays_ms.size() * buffers_pkts.size() * qdiscs.size() * repetitions;
}

void
validate(const GridSpec& g)
{
    if (g.bandwidths_mbps.empty() || g.delays_ms.empty() || g.buffers_pkts.empty() || g.qdiscs.empty())
    {
        throw std::invalid_argument{"grid: every parameter needs at least one value"};
    }
    if (g.repetitions == 0)
    {
        throw std::invalid_argument{"grid: repetitions must be >= 1"};
    }
}

std::vector<GridPoint>
enumerate(const GridSpec& g)
{
    validate(g);
    std::vector<GridPoint> points;
    points.reserve(g.size());
    for (double bw : g.bandwidths_mbps)
    {
        for (double d : g.delays_ms)
        {
            for (std::uint32_t buf : g.buffers_pkts)
            {
                for (QdiscKind q : g.qdiscs)
                {
                    for (std::uint32_t rep = 0; rep < g.repetitions; ++rep)
                    {
                        GridPoint p;
                        p.index = points.size();
                        p.bandwidth_mbps = bw;
                        p.one_way_delay_ms = d;
                        p.buffer_pkts = buf;
                        p.qdisc = q;
                        p.repetition = rep;
                        p.seed = mix_seed(g.base_seed, p.index);
                        points.push_back(p);
                    }
                }
            }
        }
    }
    return points;
}

namespace {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first
/// exception after all workers have joined.
template <typename Fn>
void
parallel_for(std::size_t n, unsigned jobs, Fn fn)
{
    if (jobs == 0)
    {
        jobs = std::max(1U, std::thread::hardware_concurrency());
    }
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
    if (jobs <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
    {
        workers.emplace_back([&]() {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock{error_mutex};
                    if (!error)
                    {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : workers)
    {
        t.join();
    }
    if (error)
    {
        std::rethrow_exception(error);
    }
}

Scenario
base_scenario(const GridPoint& p, const Tuning& tuning)
{
    Scenario s;
    s.bandwidth_mbps = p.bandwidth_mbps;
    s.one_way_delay_ms = p.one_way_delay_ms;
    s.buffer_pkts = p.buffer_pkts;
    s.qdisc = p.qdisc;
    s.seed = p.seed;
    s.tuning = tuning;
    return s;
}

constexpr double kCrossTrafficHeadstartS = 5.0;
constexpr double kDetectionTimeCapS = 60.0;

} // namespace

double
AccuracyReport::accuracy() const
{
    const std::size_t total = runs.size();
    return total == 0 ? 0.0 : static_cast<double>(true_fq + true_fifo) / static_cast<double>(total);
}

double
AccuracyReport::fq_accuracy() const
{
    const std::size_t n = true_fq + false_fifo;
    return n == 0 ? 0.0 : static_cast<double>(true_fq) / static_cast<double>(n);
}

double
AccuracyReport::fifo_accuracy() const
{
    const std::size_t n = true_fifo + false_fq;
    return n == 0 ? 0.0 : static_cast<double>(true_fifo) / static_cast<double>(n);
}

AccuracyReport
run_accuracy_grid(const GridSpec& grid, unsigned jobs)
{
    const std::vector<GridPoint> points = enumerate(grid);
    const bool cross = grid.cross_traffic == CrossTraffic::cubic_headstart_5s;

    std::vector<DetectionResult> verdicts(points.size());
    parallel_for(points.size(), jobs, [&](std::size_t i) {
        Scenario s = base_scenario(points[i], grid.tuning);
        const double probe_start = cross ? kCrossTrafficHeadstartS : 0.0;
        if (cross)
        {
            s.flows.push_back(FlowSpec{0.0, FlowKind::cubic});
        }
        s.flows.push_back(FlowSpec{probe_start, FlowKind::probe});
        s.duration_s = probe_start + kDetectionTimeCapS;

        RunOptions opts;
        opts.stop_on_detection = true;
        opts.collect_series = false;
        opts.collect_rtt_traces = false;
        const RunOutput out = run_scenario(s, opts);
        if (out.summary.detection)
        {
            verdicts[i] = *out.summary.detection;
        }
        else
        {
            // No verdict within the cap (e.g. the handshake never got through).
            verdicts[i].timed_out = true;
            verdicts[i].fq_detected = false;
        }
    });

    AccuracyReport report;
    report.cross_traffic = cross;
    report.base_seed = grid.base_seed;
    report.runs.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        AccuracyRun run{points[i], verdicts[i], false};
        const bool is_fq = points[i].qdisc == QdiscKind::fq;
        run.correct = run.detection.fq_detected == is_fq;
        if (is_fq)
        {
            (run.correct ? report.true_fq : report.false_fifo) += 1;
        }
        else
        {
            (run.correct ? report.true_fifo : report.false_fq) += 1;
        }
        report.runs.push_back(run);
    }
    return report;
}

const AlgorithmAggregate&
ComparisonReport::aggregate(std::string_view algorithm) const
{
    for (const AlgorithmAggregate& a : aggregates)
    {
        if (a.algorithm == algorithm)
        {
            return a;
        }
    }
    throw std::out_of_range{"no aggregate for algorithm " + std::string{algorithm}};
}

ComparisonReport
run_comparison(const GridSpec& grid, double duration_s, unsigned jobs)
{
    for (QdiscKind q : grid.qdiscs)
    {
        if (q != QdiscKind::fq)
        {
            throw std::invalid_argument{"comparison grid must use the fq qdisc only"};
        }
    }
    if (!(duration_s > 0.0))
    {
        throw std::invalid_argument{"comparison duration must be > 0"};
    }
    const std::vector<GridPoint> points = enumerate(grid);
    static constexpr const char* kAlgorithms[] = {"cubic", "probe"};

    std::vector<ComparisonRow> rows(points.size() * 2);
    parallel_for(rows.size(), jobs, [&](std::size_t i) {
        const GridPoint& p = points[i / 2];
        const bool probe = i % 2 == 1;
        Scenario s = base_scenario(p, grid.tuning);
        s.flows.push_back(FlowSpec{0.0, probe ? FlowKind::probe : FlowKind::cubic});
        s.duration_s = duration_s;

        RunOptions opts;
        opts.collect_series = false;
        opts.collect_rtt_traces = false;
        const RunOutput out = run_scenario(s, opts);
        const FlowSummary& f = out.summary.flows.front();
        ComparisonRow row;
        row.point = p;
        row.algorithm = kAlgorithms[i % 2];
        row.mean_throughput_mbps = f.mean_throughput_mbps;
        row.mean_rtt_ms = f.mean_rtt_ms;
        if (probe && f.detection)
        {
            row.fq_detected = f.detection->fq_detected;
        }
        rows[i] = row;
    });

    ComparisonReport report;
    report.base_seed = grid.base_seed;
    report.duration_s = duration_s;
    for (const char* name : kAlgorithms)
    {
        AlgorithmAggregate agg;
        agg.algorithm = name;
        std::size_t small = 0;
        for (const ComparisonRow& r : rows)
        {
            if (r.algorithm != name)
            {
                continue;
            }
            ++agg.runs;
            agg.mean_throughput_mbps += r.mean_throughput_mbps;
            agg.mean_rtt_ms += r.mean_rtt_ms;
            if (r.point.buffer_pkts <= kSmallBufferPkts)
            {
                ++small;
                agg.small_buffer_mean_throughput_mbps += r.mean_throughput_mbps;
            }
        }
        if (agg.runs > 0)
        {
            agg.mean_throughput_mbps /= static_cast<double>(agg.runs);
            agg.mean_rtt_ms /= static_cast<double>(agg.runs);
        }
        if (small > 0)
        {
            agg.small_buffer_mean_throughput_mbps /= static_cast<double>(small);
        }
        report.aggregates.push_back(agg);
    }
    for (const ComparisonRow& r : rows)
    {
        report.fq_detected_runs += r.fq_detected.value_or(false) ? 1 : 0;
    }
    report.rows = std::move(rows);
    return report;
}

Scenario
starvation_scenario(QdiscKind qdisc, std::uint64_t seed, double duration_s)
{
    Scenario s;
    s.bandwidth_mbps = 50.0;
    s.one_way_delay_ms = 10.0;
    s.buffer_pkts = 100;
    s.qdisc = qdisc;
    s.flows = {FlowSpec{0.0, FlowKind::cubic}, FlowSpec{5.0, FlowKind::delay_based}};
    s.duration_s = duration_s;
    s.seed = seed;
    return s;
}

RunOutput
run_starvation_demo(QdiscKind qdisc, std::uint64_t seed, double duration_s)
{
    return run_scenario(starvation_scenario(qdisc, seed, duration_s));
}

PacingPathologyResult
run_pacing_pathology(bool jitter, const PacingPathologySetup& setup)
{
    Engine engine{setup.seed};
    LinkConfig link;
    link.rate_bps = static_cast<std::uint64_t>(std::llround(setup.bandwidth_mbps * 1e6));
    link.prop_delay = from_millis(setup.one_way_delay_ms);
    link.qdisc = QdiscConfig{QdiscKind::fifo, setup.buffer_pkts, kDefaultPacketBytes};
    Dumbbell net{engine, link};

    SenderConfig cfg;
    cfg.jitter = jitter;
    Sender flow1{engine, net, 0, cfg, engine.rng("pacer/0")};
    Sender flow2{engine, net, 1, cfg, engine.rng("pacer/1")};
    Receiver rx1{net, 0};
    Receiver rx2{net, 1};

    const double r = setup.flow1_share * static_cast<double>(link.rate_bps);
    const Duration round = from_seconds(1.0);
    engine.schedule(Duration::zero(), [&]() { flow2.start(2.0 * r, round); });
    engine.schedule(setup.phase_offset, [&]() { flow1.start(r, round); });

    engine.run_until(at_seconds(setup.measure_from_s));
    const std::uint64_t b1 = rx1.bytes_received();
    const std::uint64_t b2 = rx2.bytes_received();
    engine.run_until(at_seconds(setup.measure_to_s));
    const double span = setup.measure_to_s - setup.measure_from_s;

    PacingPathologyResult res;
    res.goodput1_mbps = static_cast<double>(rx1.bytes_received() - b1) * 8.0 / span / 1e6;
    res.goodput2_mbps = static_cast<double>(rx2.bytes_received() - b2) * 8.0 / span / 1e6;
    return res;
}

} // namespace fqsim
