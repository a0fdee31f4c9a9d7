#ifndef GIBBSLINE_REPORT_HPP
#define GIBBSLINE_REPORT_HPP

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "gibbsline/config.hpp"

namespace gibbsline {

inline constexpr const char* kToolVersion = "gibbsline 0.1.0";

/// Typed row set with a fixed column order; CSV bodies are byte-stable for a
/// fixed config and tool version.
struct ReportEnvelope {
  std::string subcommand;
  std::string config_hash;
  std::string version = kToolVersion;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// 17 significant digits: round-trip exact for 64-bit floats.
std::string format_double(double v);

std::string csv_body(const ReportEnvelope& env);
nlohmann::json json_body(const ReportEnvelope& env, bool with_timestamp = true);

/// Writes <dir>/<subcommand>.csv and/or .json per the output spec.
void emit_reports(const ReportEnvelope& env, const OutputSpec& out);

}  // namespace gibbsline

#endif  // GIBBSLINE_REPORT_HPP
