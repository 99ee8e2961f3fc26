#include "fqsim/harness/scenario.hpp"

#include "json_util.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fqsim {

using detail::json;
using detail::ordered_json;

std::string_view
to_string(FlowKind kind)
{
    switch (kind)
    {
    case FlowKind::probe:
        return "probe";
    case FlowKind::cubic:
        return "cubic";
    case FlowKind::delay_based:
        return "delay_based";
    case FlowKind::pcc_like:
        return "pcc_like";
    }
    return "unknown";
}

FlowKind
parse_flow_kind(std::string_view text)
{
    for (FlowKind k : {FlowKind::probe, FlowKind::cubic, FlowKind::delay_based, FlowKind::pcc_like})
    {
        if (to_string(k) == text)
        {
            return k;
        }
    }
    throw std::invalid_argument{"unknown flow kind '" + std::string{text} + "'"};
}

ValidationError::ValidationError(std::string field, const std::string& message)
    : std::invalid_argument{field + ": " + message},
      field_{std::move(field)}
{
}

namespace {

void
require(bool ok, const char* field, const char* message)
{
    if (!ok)
    {
        throw ValidationError{field, message};
    }
}

bool
positive(double v)
{
    return std::isfinite(v) && v > 0.0;
}

} // namespace

void
validate(const Scenario& s)
{
    require(positive(s.bandwidth_mbps), "bandwidth_mbps", "must be > 0");
    require(std::isfinite(s.one_way_delay_ms) && s.one_way_delay_ms >= 0.0, "one_way_delay_ms", "must be >= 0");
    require(s.buffer_pkts >= 1, "buffer_pkts", "must be >= 1");
    require(positive(s.duration_s), "duration_s", "must be > 0");
    require(!s.flows.empty(), "flows", "at least one flow is required");
    for (const FlowSpec& f : s.flows)
    {
        require(std::isfinite(f.start_time_s) && f.start_time_s >= 0.0, "flows.start_time_s", "must be >= 0");
    }
    const Tuning& t = s.tuning;
    require(t.packet_bytes > 0, "tuning.packet_bytes", "must be > 0");
    require(t.quantum_bytes > 0, "tuning.quantum_bytes", "must be > 0");
    require(positive(t.max_rate_mbps), "tuning.max_rate_mbps", "must be > 0");
    require(positive(t.delay_threshold_ms) || t.delay_threshold_ms == 0.0, "tuning.delay_threshold_ms",
            "must be >= 0");
    require(t.delay_increase > 1.0, "tuning.delay_increase", "must be > 1");
    require(t.delay_decrease > 0.0 && t.delay_decrease < 1.0, "tuning.delay_decrease", "must lie in (0, 1)");
    require(t.cubic_beta > 0.0 && t.cubic_beta < 1.0, "tuning.cubic_beta", "must lie in (0, 1)");
    require(positive(t.cubic_c), "tuning.cubic_c", "must be > 0");
    require(t.pcc_epsilon > 0.0 && t.pcc_epsilon < 0.5, "tuning.pcc_epsilon", "must lie in (0, 0.5)");
    require(std::isfinite(t.pcc_penalty) && t.pcc_penalty >= 0.0, "tuning.pcc_penalty", "must be >= 0");
    require(positive(t.probe_initial_pkts), "tuning.probe_initial_pkts", "must be > 0");
    require(positive(t.probe_cutoff), "tuning.probe_cutoff", "must be > 0");
    require(t.probe_max_rounds >= 1, "tuning.probe_max_rounds", "must be >= 1");
}

LinkConfig
link_config(const Scenario& s)
{
    LinkConfig link;
    link.rate_bps = static_cast<std::uint64_t>(std::llround(s.bandwidth_mbps * 1e6));
    link.prop_delay = from_millis(s.one_way_delay_ms);
    link.qdisc.kind = s.qdisc;
    link.qdisc.capacity_pkts = s.buffer_pkts;
    link.qdisc.quantum_bytes = s.tuning.quantum_bytes;
    return link;
}

SenderConfig
sender_config(const Tuning& t)
{
    SenderConfig c;
    c.packet_bytes = t.packet_bytes;
    c.reorder_window = t.reorder_window;
    c.max_rate_bps = t.max_rate_mbps * 1e6;
    c.jitter = t.pacing_jitter;
    return c;
}

ControllerSettings
controller_settings(const Tuning& t)
{
    ControllerSettings c;
    c.limits.floor_bps = t.packet_bytes * 8.0;
    c.limits.ceiling_bps = t.max_rate_mbps * 1e6;
    c.delay.threshold = from_millis(t.delay_threshold_ms);
    c.delay.increase_factor = t.delay_increase;
    c.delay.decrease_factor = t.delay_decrease;
    c.cubic.beta = t.cubic_beta;
    c.cubic.c = t.cubic_c;
    c.cubic.packet_bytes = t.packet_bytes;
    c.pcc.epsilon = t.pcc_epsilon;
    c.pcc.penalty = t.pcc_penalty;
    return c;
}

ProbeConfig
probe_config(const Tuning& t)
{
    ProbeConfig p;
    p.initial_pkts_per_rtt = t.probe_initial_pkts;
    p.cutoff = t.probe_cutoff;
    p.max_rounds = t.probe_max_rounds;
    p.confirm_rounds = t.probe_confirm_rounds;
    return p;
}

namespace {

void
reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix)
{
    for (const auto& [key, _] : obj.items())
    {
        if (!allowed.contains(key))
        {
            throw ValidationError{prefix + key, "unknown field"};
        }
    }
}

template <typename T>
void
read(const json& obj, const char* key, T& out, const std::string& prefix, bool required)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        if (required)
        {
            throw ValidationError{prefix + key, "missing required field"};
        }
        return;
    }
    try
    {
        if constexpr (std::is_same_v<T, std::uint32_t> || std::is_same_v<T, std::uint64_t>)
        {
            if (!it->is_number_unsigned())
            {
                if (it->is_number_integer() || it->is_number_float())
                {
                    // Accept integral floats such as 100.0 but nothing negative or fractional.
                    const double v = it->get<double>();
                    if (v < 0.0 || std::floor(v) != v)
                    {
                        throw ValidationError{prefix + key, "must be a non-negative integer"};
                    }
                    out = static_cast<T>(v);
                    return;
                }
                throw ValidationError{prefix + key, "must be a non-negative integer"};
            }
        }
        out = it->get<T>();
    }
    catch (const json::exception&)
    {
        throw ValidationError{prefix + key, "has the wrong type"};
    }
}

Tuning
parse_tuning(const json& obj)
{
    if (!obj.is_object())
    {
        throw ValidationError{"tuning", "must be an object"};
    }
    static const std::set<std::string> allowed{
        "packet_bytes",   "quantum_bytes",  "max_rate_mbps",      "reorder_window", "pacing_jitter",
        "delay_threshold_ms", "delay_increase", "delay_decrease", "cubic_beta",     "cubic_c",
        "pcc_epsilon",    "pcc_penalty",    "probe_initial_pkts", "probe_cutoff",   "probe_max_rounds",
        "probe_confirm_rounds"};
    const std::string p = "tuning.";
    reject_unknown(obj, allowed, p);
    Tuning t;
    read(obj, "packet_bytes", t.packet_bytes, p, false);
    read(obj, "quantum_bytes", t.quantum_bytes, p, false);
    read(obj, "max_rate_mbps", t.max_rate_mbps, p, false);
    read(obj, "reorder_window", t.reorder_window, p, false);
    read(obj, "pacing_jitter", t.pacing_jitter, p, false);
    read(obj, "delay_threshold_ms", t.delay_threshold_ms, p, false);
    read(obj, "delay_increase", t.delay_increase, p, false);
    read(obj, "delay_decrease", t.delay_decrease, p, false);
    read(obj, "cubic_beta", t.cubic_beta, p, false);
    read(obj, "cubic_c", t.cubic_c, p, false);
    read(obj, "pcc_epsilon", t.pcc_epsilon, p, false);
    read(obj, "pcc_penalty", t.pcc_penalty, p, false);
    read(obj, "probe_initial_pkts", t.probe_initial_pkts, p, false);
    read(obj, "probe_cutoff", t.probe_cutoff, p, false);
    read(obj, "probe_max_rounds", t.probe_max_rounds, p, false);
    read(obj, "probe_confirm_rounds", t.probe_confirm_rounds, p, false);
    return t;
}

} // namespace

Scenario
parse_scenario(std::string_view json_text)
{
    json doc;
    try
    {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        throw ValidationError{"<document>", std::string{"malformed JSON: "} + e.what()};
    }
    if (!doc.is_object())
    {
        throw ValidationError{"<document>", "must be a JSON object"};
    }
    static const std::set<std::string> allowed{"bandwidth_mbps", "one_way_delay_ms", "buffer_pkts", "qdisc",
                                               "flows",          "duration_s",       "seed",        "tuning"};
    reject_unknown(doc, allowed, "");

    Scenario s;
    read(doc, "bandwidth_mbps", s.bandwidth_mbps, "", true);
    read(doc, "one_way_delay_ms", s.one_way_delay_ms, "", true);
    read(doc, "buffer_pkts", s.buffer_pkts, "", true);
    read(doc, "duration_s", s.duration_s, "", true);
    read(doc, "seed", s.seed, "", false);

    std::string qdisc;
    read(doc, "qdisc", qdisc, "", true);
    try
    {
        s.qdisc = parse_qdisc_kind(qdisc);
    }
    catch (const std::invalid_argument& e)
    {
        throw ValidationError{"qdisc", e.what()};
    }

    auto flows = doc.find("flows");
    if (flows == doc.end())
    {
        throw ValidationError{"flows", "missing required field"};
    }
    if (!flows->is_array())
    {
        throw ValidationError{"flows", "must be an array"};
    }
    static const std::set<std::string> flow_fields{"start_time_s", "kind"};
    for (const json& f : *flows)
    {
        if (!f.is_object())
        {
            throw ValidationError{"flows", "entries must be objects"};
        }
        reject_unknown(f, flow_fields, "flows.");
        FlowSpec spec;
        read(f, "start_time_s", spec.start_time_s, "flows.", true);
        std::string kind;
        read(f, "kind", kind, "flows.", true);
        try
        {
            spec.kind = parse_flow_kind(kind);
        }
        catch (const std::invalid_argument& e)
        {
            throw ValidationError{"flows.kind", e.what()};
        }
        s.flows.push_back(spec);
    }
    if (auto t = doc.find("tuning"); t != doc.end())
    {
        s.tuning = parse_tuning(*t);
    }
    validate(s);
    return s;
}

Scenario
load_scenario(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
    {
        throw std::runtime_error{"cannot read scenario file " + path.string()};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

namespace detail {

ordered_json
scenario_json(const Scenario& s)
{
    ordered_json flows = ordered_json::array();
    for (const FlowSpec& f : s.flows)
    {
        flows.push_back({{"start_time_s", number(f.start_time_s)}, {"kind", to_string(f.kind)}});
    }
    const Tuning& t = s.tuning;
    ordered_json tuning = {
        {"packet_bytes", t.packet_bytes},
        {"quantum_bytes", t.quantum_bytes},
        {"max_rate_mbps", number(t.max_rate_mbps)},
        {"reorder_window", t.reorder_window},
        {"pacing_jitter", t.pacing_jitter},
        {"delay_threshold_ms", number(t.delay_threshold_ms)},
        {"delay_increase", number(t.delay_increase)},
        {"delay_decrease", number(t.delay_decrease)},
        {"cubic_beta", number(t.cubic_beta)},
        {"cubic_c", number(t.cubic_c)},
        {"pcc_epsilon", number(t.pcc_epsilon)},
        {"pcc_penalty", number(t.pcc_penalty)},
        {"probe_initial_pkts", number(t.probe_initial_pkts)},
        {"probe_cutoff", number(t.probe_cutoff)},
        {"probe_max_rounds", t.probe_max_rounds},
        {"probe_confirm_rounds", t.probe_confirm_rounds},
    };
    return {
        {"bandwidth_mbps", number(s.bandwidth_mbps)},
        {"one_way_delay_ms", number(s.one_way_delay_ms)},
        {"buffer_pkts", s.buffer_pkts},
        {"qdisc", to_string(s.qdisc)},
        {"flows", flows},
        {"duration_s", number(s.duration_s)},
        {"seed", s.seed},
        {"tuning", tuning},
    };
}

} // namespace detail

std::string
scenario_to_json(const Scenario& scenario)
{
    return detail::scenario_json(scenario).dump(2);
}

} // namespace fqsim
