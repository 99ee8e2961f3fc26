#include "fqsim/sim/engine.hpp"

#include <benchmark/benchmark.h>

namespace {

void
BM_EngineScheduleRun(benchmark::State& state)
{
    const auto n = state.range(0);
    for (auto _ : state)
    {
        fqsim::Engine e;
        std::int64_t fired = 0;
        for (std::int64_t i = 0; i < n; ++i)
        {
            e.schedule(fqsim::Duration{(i * 7919) % 100'000}, [&fired]() { ++fired; });
        }
        e.run_until(fqsim::at_seconds(1.0));
        benchmark::DoNotOptimize(fired);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EngineScheduleRun)->Arg(1'000)->Arg(100'000);

void
BM_EngineCancel(benchmark::State& state)
{
    for (auto _ : state)
    {
        fqsim::Engine e;
        for (int i = 0; i < 10'000; ++i)
        {
            auto h = e.schedule(fqsim::Duration{i}, []() {});
            if (i % 2 == 0)
            {
                e.cancel(h);
            }
        }
        e.run_until(fqsim::at_seconds(1.0));
    }
    state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_EngineCancel);

} // namespace
BENCHMARK_MAIN();
