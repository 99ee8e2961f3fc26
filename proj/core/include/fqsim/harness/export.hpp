#pragma once

#include "fqsim/harness/experiments.hpp"
#include "fqsim/harness/run.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fqsim {

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest "%.6g" rendering; NaN and infinities render as "nan"/"inf".
std::string format_number(double value);

inline constexpr std::string_view kSeriesCsvHeader = "time_s,flow_id,throughput_mbps,rtt_ms";

std::string series_to_csv(const TimeSeries& series);
/// Throws std::invalid_argument on a bad header or malformed row.
TimeSeries parse_series_csv(std::string_view text);

std::string summary_to_json(const RunSummary& summary);
std::string accuracy_to_json(const AccuracyReport& report);
std::string comparison_to_json(const ComparisonReport& report);

/// Writes `contents` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

void export_series(const TimeSeries& series, const std::filesystem::path& path);
void export_summary(const RunSummary& summary, const std::filesystem::path& path);
void export_accuracy(const AccuracyReport& report, const std::filesystem::path& path);
void export_comparison(const ComparisonReport& report, const std::filesystem::path& path);

} // namespace fqsim
