#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "sphereqmc/error.hpp"
#include "sphereqmc/sphere.hpp"

namespace sphereqmc {
namespace {

constexpr double kNormTolerance = 1e-6;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

void write_configuration_csv(std::ostream& out, const Configuration& cfg) {
  const std::size_t m = cfg.ambient();
  for (std::size_t c = 0; c < m; ++c) out << (c ? "," : "") << 'x' << c;
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const auto p = cfg[i];
    for (std::size_t c = 0; c < m; ++c) out << (c ? "," : "") << p[c];
    out << '\n';
  }
}

void write_configuration_csv(const std::string& path, const Configuration& cfg) {
  std::ofstream f(path);
  if (!f) throw FormatError("cannot open " + path + " for writing");
  write_configuration_csv(f, cfg);
  if (!f) throw FormatError("failed writing " + path);
}

Configuration read_configuration_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("configuration CSV is empty");
  const auto header = split_csv(trim(line));
  if (header.size() < 2) throw FormatError("configuration CSV needs at least two columns");
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (trim(header[c]) != "x" + std::to_string(c)) {
      throw FormatError("configuration CSV header must be x0,x1,...,xd");
    }
  }
  Configuration cfg(static_cast<int>(header.size()) - 1, "file");
  std::vector<double> row(header.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw FormatError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(header.size()) + " columns");
    }
    double nrm2 = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      try {
        std::size_t used = 0;
        row[c] = std::stod(cells[c], &used);
        if (trim(cells[c].substr(used)).size() != 0) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(lineno) + ": bad number '" + cells[c] + "'");
      }
      nrm2 += row[c] * row[c];
    }
    if (std::abs(std::sqrt(nrm2) - 1.0) > kNormTolerance) {
      throw FormatError("line " + std::to_string(lineno) + ": point is not on the unit sphere");
    }
    cfg.add(row);
  }
  return cfg;
}

Configuration read_configuration_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path);
  return read_configuration_csv(f);
}

}  // namespace sphereqmc
