// Acceptance suite: one PASS/FAIL line per criterion.
//
//   fqsim_acceptance            run every criterion
//   fqsim_acceptance 4 5 7      run a subset
#include "fqsim/fqdetect/loss_ratio.hpp"
#include "fqsim/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace fqsim;

namespace {

struct Outcome
{
    bool pass{false};
    std::string detail;
};

std::string
fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Scenario
single_flow(FlowKind kind)
{
    Scenario s;
    s.bandwidth_mbps = 10;
    s.one_way_delay_ms = 10;
    s.buffer_pkts = 100;
    s.qdisc = QdiscKind::fifo;
    s.flows = {FlowSpec{0.0, kind}};
    s.duration_s = 30;
    s.seed = 1;
    return s;
}

double
cubic_reference_rtt_ms()
{
    static const double rtt = run_scenario(single_flow(FlowKind::cubic)).summary.flows.at(0).mean_rtt_ms;
    return rtt;
}

Outcome
accuracy(CrossTraffic cross)
{
    GridSpec g = GridSpec::standard();
    g.cross_traffic = cross;
    const AccuracyReport r = run_accuracy_grid(g);
    return {r.accuracy() >= 0.98,
            fmt("accuracy %.4f over %zu runs (fq %.4f, fifo %.4f; false fq %zu, false fifo %zu), need >= 0.98",
                r.accuracy(), r.runs.size(), r.fq_accuracy(), r.fifo_accuracy(), r.false_fq, r.false_fifo)};
}

Outcome
loss_ratio_oracle()
{
    const double fq = compute_loss_ratio(10e6, 5e6, 20e6, 5e6);
    const double fifo = compute_loss_ratio(10e6, 8e6, 20e6, 16e6);
    bool ok = fq == 2.0 && fifo == 1.0;
    SeededRng rng{3, "acceptance/scale"};
    int violations = 0;
    for (int i = 0; i < 100; ++i)
    {
        const double s1 = rng.uniform(1e4, 1e9);
        const double r1 = s1 * rng.uniform(0.01, 1.0);
        const double s2 = rng.uniform(1e4, 1e9);
        const double r2 = s2 * rng.uniform(0.01, 1.0);
        const double k = rng.uniform(1e-3, 1e3);
        const double a = compute_loss_ratio(s1, r1, s2, r2);
        const double b = compute_loss_ratio(k * s1, k * r1, k * s2, k * r2);
        if (std::abs(a - b) > 1e-9 * a)
        {
            ++violations;
        }
    }
    ok = ok && violations == 0;
    return {ok, fmt("fq pattern %.17g, shared pattern %.17g, %d/100 scaling violations", fq, fifo, violations)};
}

Outcome
cubic_envelope()
{
    const FlowSummary f = run_scenario(single_flow(FlowKind::cubic)).summary.flows.at(0);
    const double util = f.mean_throughput_mbps / 10.0;
    return {util >= 0.90 && f.mean_rtt_ms > 100.0,
            fmt("utilization %.3f (need >= 0.90), mean RTT %.1f ms (need > 100)", util, f.mean_rtt_ms)};
}

Outcome
delay_based_envelope()
{
    const RunOutput out = run_scenario(single_flow(FlowKind::delay_based));
    const FlowSummary& f = out.summary.flows.at(0);
    const double util = f.mean_throughput_mbps / 10.0;
    const SimTime after = at_seconds(5.0);
    const double p95 = rtt_quantile_ms(out.rtt_traces.at(0), 0.95, after);
    const double mean = rtt_mean_ms(out.rtt_traces.at(0), after);
    const double cubic_rtt = cubic_reference_rtt_ms();
    // 25 ms or a fifth of the Cubic RTT, whichever is tighter, plus 5 ms
    // allowance for round discretisation.
    const double bound = std::min(25.0, cubic_rtt / 5.0) + 5.0;
    const bool ok = util >= 0.85 && p95 <= bound;
    return {ok, fmt("utilization %.3f (need >= 0.85), p95 RTT after 5 s %.2f ms (need <= %.2f), mean %.2f ms "
                    "= cubic %.1f ms / %.1f",
                    util, p95, bound, mean, cubic_rtt, cubic_rtt / mean)};
}

Outcome
fifo_starvation()
{
    const RunOutput out = run_starvation_demo(QdiscKind::fifo);
    const double fair = 50.0 / 2.0;
    const double delay = mean_series_throughput(out.series, 1, 20.0, 30.0);
    const double cubic = mean_series_throughput(out.series, 0, 20.0, 30.0);
    return {delay < 0.2 * fair,
            fmt("delay-based final-10 s %.2f Mbps = %.1f%% of fair share (need < 20%%), cubic %.2f Mbps", delay,
                100.0 * delay / fair, cubic)};
}

Outcome
fq_fairness()
{
    const RunOutput out = run_starvation_demo(QdiscKind::fq);
    const double half = 25.0;
    const double cubic = mean_series_throughput(out.series, 0, 20.0, 30.0);
    const double delay = mean_series_throughput(out.series, 1, 20.0, 30.0);
    const double cubic_rtt = out.summary.flows.at(0).mean_rtt_ms;
    const double delay_rtt = out.summary.flows.at(1).mean_rtt_ms;
    const auto near = [&](double x) { return std::abs(x - half) <= 0.1 * half; };
    const bool ok = near(cubic) && near(delay) && cubic_rtt >= 2.0 * delay_rtt;
    return {ok, fmt("final-10 s cubic %.2f / delay-based %.2f Mbps (need 22.5..27.5), mean RTT %.1f vs %.1f ms "
                    "(ratio %.2f, need >= 2)",
                    cubic, delay, cubic_rtt, delay_rtt, cubic_rtt / delay_rtt)};
}

Outcome
systematic_comparison()
{
    GridSpec g = GridSpec::standard();
    g.qdiscs = {QdiscKind::fq};
    const ComparisonReport r = run_comparison(g, 30.0);
    const AlgorithmAggregate& cubic = r.aggregate("cubic");
    const AlgorithmAggregate& probe = r.aggregate("probe");
    const double rtt_ratio = probe.mean_rtt_ms / cubic.mean_rtt_ms;
    const bool ok = rtt_ratio <= 0.8 && probe.mean_throughput_mbps >= cubic.mean_throughput_mbps;
    return {ok, fmt("probe %.2f Mbps / %.2f ms, cubic %.2f Mbps / %.2f ms; RTT ratio %.3f (need <= 0.8), "
                    "throughput %s cubic; fq detected in %zu/%zu runs",
                    probe.mean_throughput_mbps, probe.mean_rtt_ms, cubic.mean_throughput_mbps, cubic.mean_rtt_ms,
                    rtt_ratio, probe.mean_throughput_mbps >= cubic.mean_throughput_mbps ? ">=" : "<",
                    r.fq_detected_runs, probe.runs)};
}

Outcome
pacing_pathology()
{
    const PacingPathologyResult strict = run_pacing_pathology(false);
    const PacingPathologyResult jitter = run_pacing_pathology(true);
    const bool ok = strict.ratio() < 0.10 && std::abs(jitter.ratio() - 0.5) <= 0.15;
    return {ok, fmt("strict pacing goodput ratio %.3f (need < 0.10), jittered %.3f (need 0.35..0.65)", strict.ratio(),
                    jitter.ratio())};
}

Outcome
property_suites()
{
    const std::string cmd = std::string{FQSIM_PROPERTY_TESTS} + " --gtest_brief=1 > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return {rc == 0, fmt("randomized property suite (100 configurations each) exit status %d", rc)};
}

} // namespace

int
main(int argc, char** argv)
{
    const std::vector<std::function<Outcome()>> criteria{
        [] { return accuracy(CrossTraffic::none); },
        [] { return accuracy(CrossTraffic::cubic_headstart_5s); },
        loss_ratio_oracle,
        cubic_envelope,
        delay_based_envelope,
        fifo_starvation,
        fq_fairness,
        systematic_comparison,
        pacing_pathology,
        property_suites,
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
    {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > static_cast<int>(criteria.size()))
        {
            std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
            return 2;
        }
        selected.insert(n);
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const int n = static_cast<int>(i) + 1;
        if (!selected.empty() && selected.count(n) == 0)
        {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = criteria[i]();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string{"error: "} + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s %s [%.1f s]\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
