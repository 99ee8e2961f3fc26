#include "fqsim/netem/qdisc.hpp"

#include <benchmark/benchmark.h>

namespace {

void
BM_QdiscChurn(benchmark::State& state, fqsim::QdiscKind kind)
{
    const auto flows = static_cast<fqsim::FlowId>(state.range(0));
    auto q = fqsim::make_qdisc(fqsim::QdiscConfig{kind, 1000, 1500});
    fqsim::Packet p;
    for (fqsim::FlowId f = 0; f < flows; ++f)
    {
        for (int i = 0; i < 8; ++i)
        {
            p.flow = f;
            q->enqueue(p);
        }
    }
    for (auto _ : state)
    {
        auto out = q->dequeue();
        q->enqueue(*out);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_QdiscChurn, fifo, fqsim::QdiscKind::fifo)->Arg(2)->Arg(64);
BENCHMARK_CAPTURE(BM_QdiscChurn, drr, fqsim::QdiscKind::fq)->Arg(2)->Arg(64);

} // namespace
