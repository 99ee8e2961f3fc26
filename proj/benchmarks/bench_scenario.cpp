#include "fqsim/harness/run.hpp"

#include <benchmark/benchmark.h>

namespace {

void
BM_ProbeVsCubic(benchmark::State& state)
{
    fqsim::Scenario s;
    s.bandwidth_mbps = 20;
    s.qdisc = fqsim::QdiscKind::fq;
    s.flows = {{0.0, fqsim::FlowKind::cubic}, {1.0, fqsim::FlowKind::probe}};
    s.duration_s = static_cast<double>(state.range(0));
    fqsim::RunOptions opts;
    opts.collect_rtt_traces = false;
    for (auto _ : state)
    {
        auto out = fqsim::run_scenario(s, opts);
        benchmark::DoNotOptimize(out.summary.end_time_s);
    }
    state.counters["sim_s_per_s"] =
        benchmark::Counter(s.duration_s * static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ProbeVsCubic)->Arg(5)->Unit(benchmark::kMillisecond);

} // namespace
