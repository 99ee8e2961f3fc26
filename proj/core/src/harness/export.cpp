#include "fqsim/harness/export.hpp"

#include "json_util.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace fqsim {

using detail::number;
using detail::ordered_json;

std::string
format_number(double value)
{
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.6g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string
series_to_csv(const TimeSeries& series)
{
    std::string out{kSeriesCsvHeader};
    out += '\n';
    for (const SeriesSample& s : series)
    {
        out += format_number(s.time_s);
        out += ',';
        out += std::to_string(s.flow_id);
        out += ',';
        out += format_number(s.throughput_mbps);
        out += ',';
        out += format_number(s.rtt_ms);
        out += '\n';
    }
    return out;
}

namespace {

double
parse_double(std::string_view field, std::size_t line)
{
    const std::string tmp{field};
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size())
    {
        throw std::invalid_argument{"series csv line " + std::to_string(line) + ": bad number '" + tmp + "'"};
    }
    return v;
}

std::uint32_t
parse_flow(std::string_view field, std::size_t line)
{
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
    {
        throw std::invalid_argument{"series csv line " + std::to_string(line) + ": bad flow id"};
    }
    return v;
}

ordered_json
detection_json(const DetectionResult& d)
{
    ordered_json j;
    j["fq_detected"] = d.fq_detected;
    j["loss_ratio"] = d.loss_ratio ? number(*d.loss_ratio) : ordered_json(nullptr);
    j["rounds_used"] = d.rounds_used;
    j["timed_out"] = d.timed_out;
    j["combined_handover_rate_mbps"] = number(d.combined_handover_rate_bps / 1e6);
    j["decided_at_s"] = number(to_seconds(d.decided_at - kSimStart));
    return j;
}

ordered_json
optional_detection(const std::optional<DetectionResult>& d)
{
    return d ? detection_json(*d) : ordered_json(nullptr);
}

ordered_json
point_json(const GridPoint& p)
{
    ordered_json j;
    j["index"] = p.index;
    j["bandwidth_mbps"] = number(p.bandwidth_mbps);
    j["one_way_delay_ms"] = number(p.one_way_delay_ms);
    j["buffer_pkts"] = p.buffer_pkts;
    j["qdisc"] = std::string{to_string(p.qdisc)};
    j["repetition"] = p.repetition;
    j["seed"] = p.seed;
    return j;
}

std::string
dump(const ordered_json& j)
{
    return j.dump(2) + "\n";
}

} // namespace

TimeSeries
parse_series_csv(std::string_view text)
{
    TimeSeries out;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty())
    {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r')
        {
            line.remove_suffix(1);
        }
        if (!header_seen)
        {
            if (line != kSeriesCsvHeader)
            {
                throw std::invalid_argument{"series csv: unexpected header"};
            }
            header_seen = true;
            continue;
        }
        if (line.empty())
        {
            continue;
        }
        std::string_view fields[4];
        std::size_t count = 0;
        while (count < 4)
        {
            const std::size_t comma = line.find(',');
            fields[count++] = line.substr(0, comma);
            if (comma == std::string_view::npos)
            {
                line = {};
                break;
            }
            line = line.substr(comma + 1);
        }
        if (count != 4 || !line.empty())
        {
            throw std::invalid_argument{"series csv line " + std::to_string(line_no) + ": expected 4 fields"};
        }
        out.push_back(SeriesSample{parse_double(fields[0], line_no), parse_flow(fields[1], line_no),
                                   parse_double(fields[2], line_no), parse_double(fields[3], line_no)});
    }
    if (!header_seen)
    {
        throw std::invalid_argument{"series csv: missing header"};
    }
    return out;
}

std::string
summary_to_json(const RunSummary& s)
{
    ordered_json j;
    j["scenario"] = detail::scenario_json(s.scenario);
    j["seed"] = s.seed;
    j["end_time_s"] = number(s.end_time_s);
    ordered_json flows = ordered_json::array();
    for (const FlowSummary& f : s.flows)
    {
        ordered_json fj;
        fj["index"] = f.index;
        fj["kind"] = std::string{to_string(f.kind)};
        fj["controller"] = f.controller;
        fj["start_time_s"] = number(f.start_time_s);
        fj["mean_throughput_mbps"] = number(f.mean_throughput_mbps);
        fj["mean_rtt_ms"] = number(f.mean_rtt_ms);
        fj["p95_rtt_ms"] = number(f.p95_rtt_ms);
        fj["loss_count"] = f.loss_count;
        fj["packets_sent"] = f.packets_sent;
        fj["packets_acked"] = f.packets_acked;
        fj["detection"] = optional_detection(f.detection);
        flows.push_back(std::move(fj));
    }
    j["flows"] = std::move(flows);
    j["detection"] = optional_detection(s.detection);
    return dump(j);
}

std::string
accuracy_to_json(const AccuracyReport& r)
{
    ordered_json j;
    j["cross_traffic"] = r.cross_traffic ? "cubic_headstart_5s" : "none";
    j["base_seed"] = r.base_seed;
    j["total"] = r.runs.size();
    j["true_fq"] = r.true_fq;
    j["false_fq"] = r.false_fq;
    j["true_fifo"] = r.true_fifo;
    j["false_fifo"] = r.false_fifo;
    j["accuracy"] = number(r.accuracy());
    j["fq_accuracy"] = number(r.fq_accuracy());
    j["fifo_accuracy"] = number(r.fifo_accuracy());
    ordered_json runs = ordered_json::array();
    for (const AccuracyRun& run : r.runs)
    {
        ordered_json rj = point_json(run.point);
        rj["detection"] = detection_json(run.detection);
        rj["correct"] = run.correct;
        runs.push_back(std::move(rj));
    }
    j["runs"] = std::move(runs);
    return dump(j);
}

std::string
comparison_to_json(const ComparisonReport& r)
{
    ordered_json j;
    j["base_seed"] = r.base_seed;
    j["duration_s"] = number(r.duration_s);
    j["fq_detected_runs"] = r.fq_detected_runs;
    ordered_json aggs = ordered_json::array();
    for (const AlgorithmAggregate& a : r.aggregates)
    {
        ordered_json aj;
        aj["algorithm"] = a.algorithm;
        aj["runs"] = a.runs;
        aj["mean_throughput_mbps"] = number(a.mean_throughput_mbps);
        aj["mean_rtt_ms"] = number(a.mean_rtt_ms);
        aj["small_buffer_mean_throughput_mbps"] = number(a.small_buffer_mean_throughput_mbps);
        aggs.push_back(std::move(aj));
    }
    j["aggregates"] = std::move(aggs);
    ordered_json rows = ordered_json::array();
    for (const ComparisonRow& row : r.rows)
    {
        ordered_json rj = point_json(row.point);
        rj["algorithm"] = row.algorithm;
        rj["mean_throughput_mbps"] = number(row.mean_throughput_mbps);
        rj["mean_rtt_ms"] = number(row.mean_rtt_ms);
        rj["fq_detected"] = row.fq_detected ? ordered_json(*row.fq_detected) : ordered_json(nullptr);
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return dump(j);
}

void
write_text_file(const std::filesystem::path& path, std::string_view contents)
{
    std::error_code ec;
    if (path.has_parent_path())
    {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
        {
            throw IoError{"cannot create directory " + path.parent_path().string() + ": " + ec.message()};
        }
    }
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    if (!out)
    {
        throw IoError{"cannot open " + path.string() + " for writing"};
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out)
    {
        throw IoError{"write failed: " + path.string()};
    }
}

void
export_series(const TimeSeries& series, const std::filesystem::path& path)
{
    write_text_file(path, series_to_csv(series));
}

void
export_summary(const RunSummary& summary, const std::filesystem::path& path)
{
    write_text_file(path, summary_to_json(summary));
}

void
export_accuracy(const AccuracyReport& report, const std::filesystem::path& path)
{
    write_text_file(path, accuracy_to_json(report));
}

void
export_comparison(const ComparisonReport& report, const std::filesystem::path& path)
{
    write_text_file(path, comparison_to_json(report));
}

} // namespace fqsim
