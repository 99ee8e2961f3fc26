#include "fqsim/harness/run.hpp"

#include "fqsim/harness/flows.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace fqsim {

namespace {

struct FlowBook
{
    std::unique_ptr<FlowAgent> agent;
    SimTime start;
    std::uint64_t acked_bytes_at_sample{0};
    std::vector<RttSample> rtt;
    double rtt_sum_ms{0.0};
    std::uint64_t rtt_count{0};
};

std::uint64_t
acked_bytes(FlowAgent& agent)
{
    std::uint64_t total = 0;
    for (Sender* s : agent.senders())
    {
        total += s->bytes_acked();
    }
    return total;
}

} // namespace

RunOutput
run_scenario(const Scenario& scenario, const RunOptions& options)
{
    validate(scenario);

    Engine engine{scenario.seed};
    Dumbbell net{engine, link_config(scenario)};
    const SenderConfig sender = sender_config(scenario.tuning);
    const ControllerSettings controllers = controller_settings(scenario.tuning);

    std::vector<FlowBook> books;
    books.reserve(scenario.flows.size());
    FlowId next_id = 0;
    for (const FlowSpec& spec : scenario.flows)
    {
        FlowBook book;
        book.start = at_seconds(spec.start_time_s);
        if (spec.kind == FlowKind::probe)
        {
            ProbeConnectionConfig cfg;
            cfg.probe = probe_config(scenario.tuning);
            cfg.sender = sender;
            cfg.controllers = controllers;
            auto probe = std::make_unique<ProbeFlow>(engine, net, next_id, next_id + 1, cfg);
            next_id += 2;
            if (options.stop_on_detection)
            {
                probe->connection().on_decision([&engine](const DetectionResult&) { engine.stop(); });
            }
            book.agent = std::move(probe);
        }
        else
        {
            book.agent = std::make_unique<ControlledFlow>(engine, net, next_id++, spec.kind, controllers, sender,
                                                          scenario.tuning.probe_initial_pkts);
        }
        books.push_back(std::move(book));
    }

    // Only the first probe may stop the run.
    if (options.stop_on_detection)
    {
        bool first = true;
        for (FlowBook& b : books)
        {
            if (auto* probe = dynamic_cast<ProbeFlow*>(b.agent.get()))
            {
                if (!first)
                {
                    probe->connection().on_decision(nullptr);
                }
                first = false;
            }
        }
    }

    for (FlowBook& b : books)
    {
        FlowBook* book = &b;
        for (Sender* s : b.agent->senders())
        {
            s->on_ack_event([book, &engine, &options](const Packet&, Duration rtt) {
                book->rtt_sum_ms += to_millis(rtt);
                ++book->rtt_count;
                if (options.collect_rtt_traces)
                {
                    book->rtt.push_back(RttSample{engine.now(), rtt});
                }
            });
        }
        engine.schedule_at(b.start, [book]() { book->agent->start(); });
    }

    RunOutput out;
    const SimTime end = at_seconds(scenario.duration_s);
    const double window_s = to_seconds(options.series_window);

    std::function<void()> sample;
    if (options.collect_series)
    {
        sample = [&]() {
            const SimTime now = engine.now();
            for (std::size_t i = 0; i < books.size(); ++i)
            {
                FlowBook& b = books[i];
                if (now <= b.start)
                {
                    continue;
                }
                const std::uint64_t total = acked_bytes(*b.agent);
                const std::uint64_t delta = total - b.acked_bytes_at_sample;
                b.acked_bytes_at_sample = total;
                const Sender& primary = b.agent->primary();
                if (!primary.rtt().has_sample())
                {
                    continue;
                }
                out.series.push_back(SeriesSample{to_seconds(now), static_cast<std::uint32_t>(i),
                                                  static_cast<double>(delta) * 8.0 / window_s / 1e6,
                                                  to_millis(primary.rtt().latest())});
            }
            if (now + options.series_window <= end)
            {
                engine.schedule(options.series_window, sample);
            }
        };
        engine.schedule(options.series_window, sample);
    }

    engine.run_until(end);
    const SimTime stop_at = engine.now();

    RunSummary& summary = out.summary;
    summary.scenario = scenario;
    summary.seed = scenario.seed;
    summary.end_time_s = to_seconds(stop_at);
    for (std::size_t i = 0; i < books.size(); ++i)
    {
        FlowBook& b = books[i];
        FlowSummary fs;
        fs.index = i;
        fs.kind = scenario.flows[i].kind;
        fs.controller = std::string{b.agent->controller_name()};
        fs.start_time_s = scenario.flows[i].start_time_s;
        const double active_s = to_seconds(stop_at - b.start);
        fs.mean_throughput_mbps = active_s > 0.0 ? static_cast<double>(acked_bytes(*b.agent)) * 8.0 / active_s / 1e6
                                                 : 0.0;
        fs.mean_rtt_ms = b.rtt_count > 0 ? b.rtt_sum_ms / static_cast<double>(b.rtt_count) : 0.0;
        fs.p95_rtt_ms = options.collect_rtt_traces ? rtt_quantile_ms(b.rtt, 0.95) : 0.0;
        for (Sender* s : b.agent->senders())
        {
            fs.loss_count += s->packets_lost();
            fs.packets_sent += s->packets_sent();
            fs.packets_acked += s->packets_acked();
        }
        fs.detection = b.agent->detection();
        if (fs.detection && !summary.detection)
        {
            summary.detection = fs.detection;
        }
        summary.flows.push_back(std::move(fs));
        out.rtt_traces.push_back(std::move(b.rtt));
    }
    return out;
}

double
mean_series_throughput(const TimeSeries& series, std::uint32_t flow_id, double t0_s, double t1_s)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const SeriesSample& s : series)
    {
        if (s.flow_id == flow_id && s.time_s > t0_s && s.time_s <= t1_s)
        {
            sum += s.throughput_mbps;
            ++n;
        }
    }
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

double
rtt_quantile_ms(const std::vector<RttSample>& trace, double p, SimTime after)
{
    std::vector<std::int64_t> v;
    v.reserve(trace.size());
    for (const RttSample& s : trace)
    {
        if (s.at > after)
        {
            v.push_back(s.rtt.count());
        }
    }
    if (v.empty())
    {
        return 0.0;
    }
    const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
    const std::size_t idx = std::min(v.size() - 1, rank == 0 ? 0 : rank - 1);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
    return static_cast<double>(v[idx]) * 1e-6;
}

double
rtt_mean_ms(const std::vector<RttSample>& trace, SimTime after)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const RttSample& s : trace)
    {
        if (s.at > after)
        {
            sum += to_millis(s.rtt);
            ++n;
        }
    }
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

} // namespace fqsim
