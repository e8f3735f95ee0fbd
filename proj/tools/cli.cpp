#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sphereqmc/closedforms.hpp"
#include "sphereqmc/energy.hpp"
#include "sphereqmc/error.hpp"
#include "sphereqmc/harness.hpp"
#include "sphereqmc/specfun.hpp"
#include "sphereqmc/wce.hpp"

namespace sphereqmc::cli {
namespace {

using nlohmann::ordered_json;

// Output target: a file when a path is given, otherwise the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw FormatError("cannot open '" + path + "' for writing");
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Configuration load_points(const std::string& path, int d) {
  auto cfg = read_configuration_csv(path);
  if (cfg.dim() != d) {
    throw DomainError("points in '" + path + "' live on S^" + std::to_string(cfg.dim()) +
                      ", not S^" + std::to_string(d));
  }
  return cfg;
}

// Appends key=value pairs from a config file as flags, unless the flag is
// already on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config file '" + path + "'");
  auto present = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> extra;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") continue;
    const std::string flag = "--" + key;
    if (!present(flag)) {
      extra.push_back(flag);
      extra.push_back(value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

struct Options {
  unsigned threads = 0;
  std::string config;

  std::string ensemble = "uniform";
  int d = 2;
  std::size_t n = 0;
  int degree = -1;
  std::uint64_t seed = 0;
  std::string out;

  std::string points;
  double s = 1.5;
  std::size_t lmax = 0;

  std::string quantity = "wce2";

  std::string n_list;
  std::string l_list;
  std::string s_grid;
  std::size_t reps = 100;
  std::string format;

  std::string in;
  double tol = 0.15;

  std::string a_list = "-0.5,0.5,1";
  std::string prop7_degrees = "50,100,200";
};

std::size_t resolve_size(const Options& o, harness::EnsembleKind kind) {
  if (kind == harness::EnsembleKind::harmonic) {
    if (o.degree < 0 && o.n == 0) throw DomainError("harmonic ensemble needs --L or --n");
    if (o.degree >= 0) return specfun::polynomial_space_dimension(o.d, o.degree);
    return o.n;
  }
  if (o.n == 0) throw DomainError("--n is required");
  return o.n;
}

int run_sample(const Options& o, std::ostream& out) {
  const auto kind = harness::parse_ensemble(o.ensemble);
  const auto cfg = harness::sample_ensemble(kind, o.d, resolve_size(o, kind), o.seed);
  Sink sink(o.out, out);
  write_configuration_csv(sink.stream(), cfg);
  return kSuccess;
}

int run_wce(const Options& o, std::ostream& out) {
  const auto cfg = load_points(o.points, o.d);
  const wce::SobolevOrder so(o.d, o.s);
  const double w2 = wce::wce_squared(cfg, so);
  ordered_json j{{"wce2", w2}, {"wce", std::sqrt(w2)}, {"s", o.s}, {"N", cfg.size()}};
  if (o.lmax > 0) {
    const auto spec = wce::wce_squared_spectral(cfg, so, o.lmax);
    j["spectral"] = {{"value", spec.value}, {"tail_bound", spec.tail_bound}, {"lmax", o.lmax}};
  }
  if (o.d == 2 && std::abs(o.s - 1.5) < 1e-15) j["D2"] = wce::discrepancy_l2_stolarsky(cfg);
  out << j.dump(2) << "\n";
  return kSuccess;
}

int run_energy(const Options& o, std::ostream& out) {
  const auto cfg = load_points(o.points, o.d);
  const double e = energy::riesz_energy(cfg, o.s);
  ordered_json j{{"energy", e}, {"s", o.s}, {"N", cfg.size()}};
  if (o.s < o.d) j["continuous"] = energy::continuous_energy(o.d, o.s);
  out << j.dump(2) << "\n";
  return kSuccess;
}

int run_expected(const Options& o, std::ostream& out) {
  using closedforms::ExpectedValue;
  const auto kind = harness::parse_ensemble(o.ensemble);
  const bool want_wce = o.quantity == "wce2";
  if (!want_wce && o.quantity != "energy") {
    throw DomainError("--quantity must be wce2 or energy");
  }
  ExpectedValue v;
  std::size_t n = 0;
  switch (kind) {
    case harness::EnsembleKind::spherical:
      n = resolve_size(o, kind);
      if (!want_wce) {
        v = closedforms::expected_energy_spherical(n, o.s);
      } else if (o.s > 1.0 && o.s < 2.0) {
        v = closedforms::expected_wce2_spherical(n, o.s);
      } else {
        v = closedforms::expected_wce2_spherical_assembled(n, wce::SobolevOrder(2, o.s));
      }
      break;
    case harness::EnsembleKind::elliptic:
      n = resolve_size(o, kind);
      v = want_wce ? closedforms::expected_wce2_elliptic(n, wce::SobolevOrder(2, o.s))
                   : closedforms::expected_energy_elliptic(n, o.s);
      break;
    case harness::EnsembleKind::uniform:
      n = resolve_size(o, kind);
      v = want_wce ? closedforms::expected_wce2_uniform(n, wce::SobolevOrder(o.d, o.s))
                   : closedforms::expected_energy_uniform(o.d, n, o.s);
      break;
    case harness::EnsembleKind::harmonic: {
      if (!want_wce) throw DomainError("no expected-energy formula for the harmonic ensemble");
      n = resolve_size(o, kind);
      const auto degree = harness::harmonic_degree_for(o.d, n);
      if (!degree) throw DomainError("N is not the dimension of a polynomial space");
      v = closedforms::expected_wce2_harmonic_quadrature(o.d, *degree, o.s);
      break;
    }
    case harness::EnsembleKind::jittered:
      throw DomainError("no closed form for the jittered ensemble");
  }
  ordered_json j{{"ensemble", o.ensemble}, {"quantity", o.quantity}, {"d", o.d}, {"N", n},
                 {"s", o.s}, {"value", v.value}, {"kind", closedforms::to_string(v.kind)}};
  if (!v.error_term.empty()) j["error_term"] = v.error_term;
  out << j.dump(2) << "\n";
  return kSuccess;
}

int run_scan(const Options& o, std::ostream& out, std::ostream& err) {
  harness::EnsembleSpec spec{harness::parse_ensemble(o.ensemble), o.d, o.seed};
  std::vector<std::size_t> sizes;
  if (!o.l_list.empty()) {
    for (std::size_t degree : parse_count_list(o.l_list)) {
      sizes.push_back(specfun::polynomial_space_dimension(o.d, static_cast<int>(degree)));
    }
  }
  if (!o.n_list.empty()) {
    const auto more = parse_count_list(o.n_list);
    sizes.insert(sizes.end(), more.begin(), more.end());
  }
  if (sizes.empty()) throw DomainError("scan needs --n (or --L for the harmonic ensemble)");
  if (o.s_grid.empty()) throw DomainError("scan needs --s");
  const auto result = harness::run_scan(spec, sizes, parse_real_list(o.s_grid), o.reps, o.threads);
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  Sink sink(o.out, out);
  const bool json = o.format == "json" || (o.format.empty() && ends_with(o.out, ".json"));
  if (json) {
    harness::write_scan_json(sink.stream(), result);
  } else {
    harness::write_scan_csv(sink.stream(), result);
  }
  return kSuccess;
}

int run_strength(const Options& o, std::ostream& out) {
  std::ifstream in(o.in);
  if (!in) throw FormatError("cannot open '" + o.in + "'");
  const auto result = ends_with(o.in, ".json") ? harness::read_scan_json(in) : harness::read_scan_csv(in);
  out << harness::format_strength_report(harness::fit_strength(result, o.d, o.tol));
  return kSuccess;
}

int run_prop7(const Options& o, std::ostream& out) {
  std::ostringstream table;
  table << "a,L,lhs,rhs,relative_difference\n";
  table.precision(10);
  for (double a : parse_real_list(o.a_list)) {
    const double rhs = closedforms::rescaled_jacobi_limit(o.d, a);
    for (std::size_t degree : parse_count_list(o.prop7_degrees)) {
      const double lhs = closedforms::rescaled_jacobi_integral(o.d, a, static_cast<int>(degree));
      table << a << ',' << degree << ',' << lhs << ',' << rhs << ',' << (lhs - rhs) / rhs << "\n";
    }
  }
  out << table.str();
  return kSuccess;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  auto number = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw DomainError("bad number '" + t + "' in '" + text + "'");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw DomainError("range must be start:stop:step, got '" + text + "'");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw DomainError("empty or invalid range '" + text + "'");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.size() || p.front() == '-') {
      throw DomainError("bad count '" + p + "' in '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

int cli_main(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-Monte Carlo point sets on spheres: sampling, worst-case error, energies"};
  app.set_version_flag("--version", harness::version());
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (overrides SPHEREQMC_THREADS)");
  app.add_option("--config", o.config, "File of key=value pairs; command-line flags win");

  auto* sample = app.add_subcommand("sample", "Draw one configuration and write it as CSV");
  sample->add_option("--ensemble", o.ensemble, "uniform|jittered|harmonic|spherical|elliptic")->required();
  sample->add_option("--d", o.d, "Sphere dimension");
  sample->add_option("--n", o.n, "Number of points");
  sample->add_option("--L", o.degree, "Polynomial degree (harmonic)");
  sample->add_option("--seed", o.seed, "Random seed");
  sample->add_option("--out", o.out, "Output CSV (default stdout)");

  auto* wce_cmd = app.add_subcommand("wce", "Worst-case error of a point set");
  wce_cmd->add_option("--points", o.points, "Configuration CSV")->required();
  wce_cmd->add_option("--s", o.s, "Sobolev order")->required();
  wce_cmd->add_option("--d", o.d, "Sphere dimension");
  wce_cmd->add_option("--lmax", o.lmax, "Also evaluate the spectral sum to this degree");

  auto* energy_cmd = app.add_subcommand("energy", "Riesz (s != 0) or logarithmic (s = 0) energy");
  energy_cmd->add_option("--points", o.points, "Configuration CSV")->required();
  energy_cmd->add_option("--s", o.s, "Riesz exponent")->required();
  energy_cmd->add_option("--d", o.d, "Sphere dimension");

  auto* expected = app.add_subcommand("expected", "Closed-form expected wce^2 or energy");
  expected->add_option("--ensemble", o.ensemble, "spherical|elliptic|uniform|harmonic")->required();
  expected->add_option("--n", o.n, "Number of points");
  expected->add_option("--L", o.degree, "Polynomial degree (harmonic)");
  expected->add_option("--s", o.s, "Sobolev order or Riesz exponent")->required();
  expected->add_option("--d", o.d, "Sphere dimension");
  expected->add_option("--quantity", o.quantity, "wce2|energy");

  auto* scan = app.add_subcommand("scan", "Monte Carlo mean wce^2 over an (N, s) grid");
  scan->add_option("--ensemble", o.ensemble, "uniform|jittered|harmonic|spherical|elliptic")->required();
  scan->add_option("--d", o.d, "Sphere dimension");
  scan->add_option("--n", o.n_list, "Comma-separated sizes");
  scan->add_option("--L", o.l_list, "Comma-separated degrees (harmonic)");
  scan->add_option("--s", o.s_grid, "start:stop:step or comma list")->required();
  scan->add_option("--reps", o.reps, "Replicates per N");
  scan->add_option("--seed", o.seed, "Master seed");
  scan->add_option("--out", o.out, "Output path (.csv or .json; default stdout)");
  scan->add_option("--format", o.format, "csv|json");

  auto* strength = app.add_subcommand("strength", "Slope fit and strength estimate from a scan");
  strength->add_option("--in", o.in, "Scan CSV or JSON")->required();
  strength->add_option("--d", o.d, "Sphere dimension");
  strength->add_option("--tol", o.tol, "Slope tolerance");

  auto* prop7 = app.add_subcommand("prop7", "Rescaled Jacobi integrals against their Bessel limit");
  prop7->add_option("--d", o.d, "Sphere dimension");
  prop7->add_option("--a", o.a_list, "Comma-separated exponents in (-1, d)");
  prop7->add_option("--L", o.prop7_degrees, "Comma-separated degrees");

  std::vector<std::string> args;
  try {
    args = merge_config(raw_args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kSuccess;
    err << app.help();
    return kUsageError;
  }

  try {
    if (*sample) return run_sample(o, out);
    if (*wce_cmd) return run_wce(o, out);
    if (*energy_cmd) return run_energy(o, out);
    if (*expected) return run_expected(o, out);
    if (*scan) return run_scan(o, out, err);
    if (*strength) return run_strength(o, out);
    if (*prop7) return run_prop7(o, out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace sphereqmc::cli
