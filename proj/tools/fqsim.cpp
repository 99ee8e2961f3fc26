// fqsim: command-line front end for the simulator and experiment harness.

#include "fqsim/harness/experiments.hpp"
#include "fqsim/harness/export.hpp"
#include "fqsim/harness/run.hpp"
#include "fqsim/harness/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace fqsim;

namespace {

void
print_summary(const RunSummary& s)
{
    for (const FlowSummary& f : s.flows)
    {
        std::printf("flow %zu  %-11s  tput %8.3f Mbps  rtt mean %8.2f ms  p95 %8.2f ms  losses %llu\n", f.index,
                    f.controller.c_str(), f.mean_throughput_mbps, f.mean_rtt_ms, f.p95_rtt_ms,
                    static_cast<unsigned long long>(f.loss_count));
    }
    if (s.detection)
    {
        const DetectionResult& d = *s.detection;
        std::printf("detection: %s  loss_ratio %s  rounds %u%s\n", d.fq_detected ? "fq" : "fifo",
                    d.loss_ratio ? format_number(*d.loss_ratio).c_str() : "n/a", d.rounds_used,
                    d.timed_out ? "  (timed out)" : "");
    }
}

void
write_run(const RunOutput& out, const fs::path& dir)
{
    export_summary(out.summary, dir / "summary.json");
    export_series(out.series, dir / "series.csv");
    std::printf("wrote %s and %s\n", (dir / "summary.json").c_str(), (dir / "series.csv").c_str());
}

int
cmd_run(const std::string& scenario_path, const fs::path& out)
{
    const Scenario s = load_scenario(scenario_path);
    const RunOutput result = run_scenario(s);
    print_summary(result.summary);
    write_run(result, out);
    return 0;
}

int
cmd_accuracy(bool cross, std::uint64_t seed, unsigned jobs, const fs::path& out)
{
    GridSpec grid = GridSpec::standard();
    grid.base_seed = seed;
    grid.cross_traffic = cross ? CrossTraffic::cubic_headstart_5s : CrossTraffic::none;
    const AccuracyReport r = run_accuracy_grid(grid, jobs);
    std::printf("runs %zu  accuracy %.4f  (fq %.4f, fifo %.4f)\n", r.runs.size(), r.accuracy(), r.fq_accuracy(),
                r.fifo_accuracy());
    std::printf("true_fq %zu  false_fifo %zu  true_fifo %zu  false_fq %zu\n", r.true_fq, r.false_fifo, r.true_fifo,
                r.false_fq);
    export_accuracy(r, out / "accuracy.json");
    std::printf("wrote %s\n", (out / "accuracy.json").c_str());
    return 0;
}

int
cmd_compare(std::uint64_t seed, unsigned jobs, const fs::path& out)
{
    GridSpec grid = GridSpec::standard();
    grid.qdiscs = {QdiscKind::fq};
    grid.base_seed = seed;
    const ComparisonReport r = run_comparison(grid, 30.0, jobs);
    for (const AlgorithmAggregate& a : r.aggregates)
    {
        std::printf("%-6s  runs %zu  tput %8.3f Mbps  rtt %8.2f ms  small-buffer tput %8.3f Mbps\n",
                    a.algorithm.c_str(), a.runs, a.mean_throughput_mbps, a.mean_rtt_ms,
                    a.small_buffer_mean_throughput_mbps);
    }
    std::printf("probe runs detecting fq: %zu\n", r.fq_detected_runs);
    export_comparison(r, out / "comparison.json");
    std::printf("wrote %s\n", (out / "comparison.json").c_str());
    return 0;
}

int
cmd_starvation(const std::string& qdisc, const fs::path& out)
{
    const RunOutput result = run_starvation_demo(parse_qdisc_kind(qdisc));
    print_summary(result.summary);
    write_run(result, out);
    return 0;
}

} // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"fqsim: fair-queuing detection and congestion control simulator"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    unsigned jobs = 0;
    app.add_option("-j,--jobs", jobs, "Worker threads for grid experiments (0 = all cores)");

    auto* run = app.add_subcommand("run", "Run a single scenario file");
    std::string scenario;
    run->add_option("--scenario", scenario, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory");

    auto* accuracy = app.add_subcommand("accuracy", "Detection accuracy over the 125 x {fifo, fq} grid");
    bool cross = false;
    std::uint64_t seed = 1;
    accuracy->add_flag("--cross-traffic", cross, "Start a Cubic flow 5 s before each probe");
    accuracy->add_option("--seed", seed, "Base seed");
    accuracy->add_option("--out", out_dir, "Output directory");

    auto* compare = app.add_subcommand("compare", "Cubic vs. probe flow over the fq grid, 30 s each");
    compare->add_option("--seed", seed, "Base seed");
    compare->add_option("--out", out_dir, "Output directory");

    auto* starvation = app.add_subcommand("starvation", "Cubic vs. delay-based flow on 50 Mbps / 10 ms");
    std::string qdisc = "fifo";
    starvation->add_option("--qdisc", qdisc, "Bottleneck qdisc")->check(CLI::IsMember({"fifo", "fq"}));
    starvation->add_option("--out", out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            return cmd_run(scenario, out_dir);
        }
        if (*accuracy)
        {
            return cmd_accuracy(cross, seed, jobs, out_dir);
        }
        if (*compare)
        {
            return cmd_compare(seed, jobs, out_dir);
        }
        return cmd_starvation(qdisc, out_dir);
    }
    catch (const ValidationError& e)
    {
        std::cerr << "fqsim: invalid scenario: " << e.what() << '\n';
        return 2;
    }
    catch (const IoError& e)
    {
        std::cerr << "fqsim: " << e.what() << '\n';
        return 3;
    }
    catch (const std::exception& e)
    {
        std::cerr << "fqsim: " << e.what() << '\n';
        return 1;
    }
}
