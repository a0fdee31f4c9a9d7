#include "gibbsline/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gibbsline {

void ReportEnvelope::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw std::logic_error("report row width does not match column count");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_body(const ReportEnvelope& env) {
  std::string s;
  for (std::size_t i = 0; i < env.columns.size(); ++i) {
    if (i) s += ',';
    s += env.columns[i];
  }
  s += '\n';
  for (const auto& row : env.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += row[i];
    }
    s += '\n';
  }
  return s;
}

nlohmann::json json_body(const ReportEnvelope& env, bool with_timestamp) {
  nlohmann::json j;
  j["version"] = env.version;
  j["config_hash"] = env.config_hash;
  j["subcommand"] = env.subcommand;
  if (with_timestamp) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    j["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  }
  j["columns"] = env.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : env.rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[env.columns[i]] = row[i];
    rows.push_back(obj);
  }
  j["rows"] = std::move(rows);
  return j;
}

void emit_reports(const ReportEnvelope& env, const OutputSpec& out) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out.dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out.dir);
  auto write = [&](const std::string& ext, const std::string& body) {
    fs::path p = fs::path(out.dir) / (env.subcommand + ext);
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << body;
    if (!os) throw std::runtime_error("write failed for " + p.string());
  };
  if (out.csv) write(".csv", csv_body(env));
  if (out.json) write(".json", json_body(env).dump(2) + "\n");
}

}  // namespace gibbsline
