#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sphereqmc/error.hpp"
#include "sphereqmc/harness.hpp"

namespace sphereqmc::harness {
namespace {

constexpr const char* kHeader = "ensemble,d,N,s,reps,mean_wce2,stderr_wce2,min_wce2,max_wce2";

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw FormatError("scan CSV line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

unsigned long long parse_count(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw FormatError("scan CSV line " + std::to_string(line) + ": bad integer '" + text + "'");
  }
  return v;
}

}  // namespace

void write_scan_csv(std::ostream& out, const ScanResult& result) {
  out << "# version=" << result.metadata.version << "\n";
  out << "# seed=" << result.metadata.seed << "\n";
  if (!result.metadata.timestamp.empty()) out << "# timestamp=" << result.metadata.timestamp << "\n";
  for (const auto& w : result.warnings) out << "# warning=" << w << "\n";
  out << kHeader << "\n";
  for (const auto& r : result.rows) {
    out << r.ensemble << ',' << r.d << ',' << r.n << ',' << g17(r.s) << ',' << r.reps << ','
        << g17(r.mean_wce2) << ',' << g17(r.stderr_wce2) << ',' << g17(r.min_wce2) << ','
        << g17(r.max_wce2) << "\n";
  }
}

ScanResult read_scan_csv(std::istream& in) {
  ScanResult result;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string body = line.substr(line.find_first_not_of("# "));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = body.substr(0, eq);
      const std::string value = body.substr(eq + 1);
      if (key == "version") result.metadata.version = value;
      if (key == "seed") result.metadata.seed = parse_count(value, lineno);
      if (key == "timestamp") result.metadata.timestamp = value;
      if (key == "warning") result.warnings.push_back(value);
      continue;
    }
    if (!header) {
      if (line != kHeader) throw FormatError("scan CSV: unexpected header '" + line + "'");
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw FormatError("scan CSV line " + std::to_string(lineno) + ": expected 9 fields, got " +
                        std::to_string(f.size()));
    }
    ScanRow row;
    row.ensemble = f[0];
    row.d = static_cast<int>(parse_count(f[1], lineno));
    row.n = parse_count(f[2], lineno);
    row.s = parse_real(f[3], lineno);
    row.reps = parse_count(f[4], lineno);
    row.mean_wce2 = parse_real(f[5], lineno);
    row.stderr_wce2 = parse_real(f[6], lineno);
    row.min_wce2 = parse_real(f[7], lineno);
    row.max_wce2 = parse_real(f[8], lineno);
    result.rows.push_back(row);
  }
  if (!header) throw FormatError("scan CSV: missing header");
  return result;
}

void write_scan_json(std::ostream& out, const ScanResult& result) {
  nlohmann::ordered_json j;
  j["metadata"] = {{"seed", result.metadata.seed}, {"version", result.metadata.version}};
  if (!result.metadata.timestamp.empty()) j["metadata"]["timestamp"] = result.metadata.timestamp;
  j["warnings"] = result.warnings;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : result.rows) {
    j["rows"].push_back({{"ensemble", r.ensemble},
                         {"d", r.d},
                         {"N", r.n},
                         {"s", r.s},
                         {"reps", r.reps},
                         {"mean_wce2", r.mean_wce2},
                         {"stderr_wce2", r.stderr_wce2},
                         {"min_wce2", r.min_wce2},
                         {"max_wce2", r.max_wce2}});
  }
  out << j.dump(2) << "\n";
}

ScanResult read_scan_json(std::istream& in) {
  ScanResult result;
  try {
    const auto j = nlohmann::json::parse(in);
    const auto& meta = j.at("metadata");
    result.metadata.seed = meta.at("seed").get<std::uint64_t>();
    result.metadata.version = meta.at("version").get<std::string>();
    if (meta.contains("timestamp")) result.metadata.timestamp = meta["timestamp"].get<std::string>();
    if (j.contains("warnings")) result.warnings = j["warnings"].get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      result.rows.push_back({r.at("ensemble").get<std::string>(), r.at("d").get<int>(),
                             r.at("N").get<std::size_t>(), r.at("s").get<double>(),
                             r.at("reps").get<std::size_t>(), r.at("mean_wce2").get<double>(),
                             r.at("stderr_wce2").get<double>(), r.at("min_wce2").get<double>(),
                             r.at("max_wce2").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("scan JSON: ") + e.what());
  }
  return result;
}

}  // namespace sphereqmc::harness
