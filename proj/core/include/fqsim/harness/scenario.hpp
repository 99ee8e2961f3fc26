#pragma once

#include "fqsim/cca/settings.hpp"
#include "fqsim/fqdetect/probe.hpp"
#include "fqsim/netem/link.hpp"
#include "fqsim/transport/sender.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fqsim {

enum class FlowKind : std::uint8_t
{
    probe,
    cubic,
    delay_based,
    pcc_like,
};

std::string_view to_string(FlowKind kind);
FlowKind parse_flow_kind(std::string_view text);

struct FlowSpec
{
    double start_time_s{0.0};
    FlowKind kind{FlowKind::probe};
};

/// Optional knobs; defaults reproduce the reference configuration.
struct Tuning
{
    std::uint32_t packet_bytes{kDefaultPacketBytes};
    std::uint32_t quantum_bytes{kDefaultPacketBytes};
    double max_rate_mbps{1000.0};
    std::uint32_t reorder_window{3};
    /// Pacing jitter for non-probe flows (probe flows always jitter).
    bool pacing_jitter{false};
    double delay_threshold_ms{5.0};
    double delay_increase{1.01};
    double delay_decrease{0.95};
    double cubic_beta{0.7};
    double cubic_c{0.4};
    double pcc_epsilon{0.05};
    double pcc_penalty{10.0};
    double probe_initial_pkts{10.0};
    double probe_cutoff{1.5};
    std::uint32_t probe_max_rounds{20};
    std::uint32_t probe_confirm_rounds{1};

    bool operator==(const Tuning&) const = default;
};

/// One-way delay applies to the bottleneck propagation in each direction.
struct Scenario
{
    double bandwidth_mbps{10.0};
    double one_way_delay_ms{10.0};
    std::uint32_t buffer_pkts{100};
    QdiscKind qdisc{QdiscKind::fifo};
    std::vector<FlowSpec> flows;
    double duration_s{30.0};
    std::uint64_t seed{1};
    Tuning tuning{};
};

/// Invalid configuration; `field()` names the offending field.
class ValidationError : public std::invalid_argument
{
  public:
    ValidationError(std::string field, const std::string& message);
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

void validate(const Scenario& scenario);

LinkConfig link_config(const Scenario& scenario);
SenderConfig sender_config(const Tuning& tuning);
ControllerSettings controller_settings(const Tuning& tuning);
ProbeConfig probe_config(const Tuning& tuning);

/// Parses a scenario document. Unknown fields are rejected; errors are
/// reported as ValidationError.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

} // namespace fqsim
