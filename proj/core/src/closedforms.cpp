#include "sphereqmc/closedforms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sphereqmc/energy.hpp"
#include "sphereqmc/error.hpp"
#include "sphereqmc/quadrature.hpp"
#include "sphereqmc/specfun.hpp"

namespace sphereqmc::closedforms {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_points(std::size_t n) {
  if (n < 1) throw DomainError("expected values need N >= 1");
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

ExpectedValue exact(double v) { return {v, Kind::exact, {}}; }

// ∫_1^T J_ν(t)² t^{-1-a} dt on unit panels with 16-point Gauss-Legendre.
double bessel_middle(double nu, double a, double upper) {
  static const auto rule = specfun::gauss_legendre(16);
  double sum = 0.0;
  for (double lo = 1.0; lo < upper; lo += 1.0) {
    const double mid = lo + 0.5;
    sum += 0.5 * rule.integrate([&](double x) {
      const double t = mid + 0.5 * x;
      const double j = specfun::bessel_j(nu, t);
      return j * j * std::pow(t, -1.0 - a);
    });
  }
  return sum;
}

// ∫_0^1 J_ν(t)² t^{-1-a} dt from the power series of J_ν²:
//   J_ν(t)² = Σ_k (-1)^k Γ(2ν+2k+1) / (k! Γ(ν+k+1)² Γ(2ν+k+1)) (t/2)^{2ν+2k}.
double bessel_head(double nu, double a) {
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    const double log_mag = specfun::log_gamma(2 * nu + 2 * k + 1) - specfun::log_gamma(k + 1.0) -
                           2.0 * specfun::log_gamma(nu + k + 1) -
                           specfun::log_gamma(2 * nu + k + 1) - (2 * nu + 2 * k) * kLn2;
    const double term = std::exp(log_mag) / (2 * nu + 2 * k - a);
    sum += (k % 2 == 0) ? term : -term;
    if (k > 2 && term < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// ∫_T^∞ J_ν(t)² t^{-1-a} dt from J_ν² = (1/(πt)) [1 + (μ-1)/(8t²) + cos 2ω + O(t^{-1}) oscillating],
// 2ω = 2t - (ν + 1/2)π, μ = 4ν².
double bessel_tail(double nu, double a, double t) {
  const double mu = 4.0 * nu * nu;
  const double phase = 2.0 * t - (nu + 0.5) * std::numbers::pi;
  const double mean = std::pow(t, -1.0 - a) / (1.0 + a) + (mu - 1.0) * std::pow(t, -2.0 - a) / (8.0 * (2.0 + a));
  const double oscillating = -0.5 * std::sin(phase) * std::pow(t, -2.0 - a);
  return (mean + oscillating) / std::numbers::pi;
}

constexpr double kBesselCut = 4000.0;

}  // namespace

std::string to_string(Kind kind) { return kind == Kind::exact ? "exact" : "asymptotic"; }

ExpectedValue expected_energy_spherical(std::size_t n, double s) {
  require_points(n);
  if (!(s < 4.0) || s == 0.0 || s == 2.0) {
    throw DomainError("spherical-ensemble energy needs s < 4 with s != 0, 2 (s = " + fmt(s) + ")");
  }
  const double nd = static_cast<double>(n);
  const double first = std::pow(2.0, 1.0 - s) / (2.0 - s);
  const double second = specfun::gamma(1.0 - 0.5 * s) * specfun::gamma_ratio(nd, 1.0 - 0.5 * s) /
                        std::pow(2.0, s);
  return exact((first - second) * nd * nd);
}

ExpectedValue expected_wce2_spherical(std::size_t n, double s) {
  require_points(n);
  if (!(s > 1.0 && s < 2.0)) {
    throw DomainError("spherical-ensemble wce closed form needs 1 < s < 2 (s = " + fmt(s) + ")");
  }
  return exact(std::pow(2.0, 2.0 * s - 2.0) * specfun::gamma(s) *
               specfun::gamma_ratio(static_cast<double>(n), s));
}

double elliptic_energy_constant(double s) {
  if (!(s < 0.0)) {
    throw DomainError("C(s) needs zeta at 1 - s/2 <= 1 for s = " + fmt(s) +
                      "; only s < 0 is supported");
  }
  const double h = 0.5 * s;
  return std::pow(2.0, -s) * h * (1.0 + h) * specfun::gamma(1.0 - h) * specfun::zeta(1.0 - h);
}

ExpectedValue expected_log_energy_elliptic(std::size_t n) {
  require_points(n);
  const double nd = static_cast<double>(n);
  const double c = 0.5 - kLn2;
  return exact(c * nd * nd - 0.5 * nd * std::log(nd) - c * nd);
}

ExpectedValue expected_energy_elliptic(std::size_t n, double s) {
  require_points(n);
  if (s == 0.0) return expected_log_energy_elliptic(n);
  if (!(s < 0.0)) {
    throw DomainError("elliptic-zeros energy asymptotics are supported for s <= 0 only (s = " +
                      fmt(s) + ")");
  }
  const double nd = static_cast<double>(n);
  const double lead = std::pow(2.0, 1.0 - s) / (2.0 - s) * nd * nd;
  if (s == -2.0) {
    return {lead - 8.0 * specfun::zeta(3.0) / nd, Kind::asymptotic, "o(N^-1)"};
  }
  const double order = 1.0 + 0.5 * s;
  return {lead + elliptic_energy_constant(s) * std::pow(nd, order), Kind::asymptotic,
          "o(N^" + fmt(order) + ")"};
}

ExpectedValue expected_energy_uniform(int d, std::size_t n, double s) {
  require_points(n);
  const double nd = static_cast<double>(n);
  return exact(nd * (nd - 1.0) * energy::continuous_energy(d, s));
}

ExpectedValue expected_wce2_uniform(std::size_t n, const wce::SobolevOrder& so) {
  require_points(n);
  const double v = energy::continuous_energy(so.d(), so.riesz_exponent());
  const double sign = (so.M() % 2 == 0) ? 1.0 : -1.0;
  return exact((wce::q_polynomial(so, 1.0) + sign * v) / static_cast<double>(n));
}

ExpectedValue expected_wce2_assembled(std::size_t n, const wce::SobolevOrder& so,
                                      const EnergyOracle& energy) {
  require_points(n);
  if (so.d() != 2) throw DomainError("wce assembly from expected energies is implemented on S^2");
  const double nd = static_cast<double>(n);
  const double n2 = nd * nd;

  Kind kind = Kind::exact;
  std::string errors;
  auto take = [&](double exponent) {
    const ExpectedValue e = energy(exponent);
    if (e.kind == Kind::asymptotic) {
      kind = Kind::asymptotic;
      if (!errors.empty()) errors += " + ";
      errors += e.error_term + " from E_" + fmt(exponent);
    }
    return e.value;
  };

  const double e = take(so.riesz_exponent());
  const double v = energy::continuous_energy(2, so.riesz_exponent());
  const auto q = wce::q_coefficients(so);
  double qsum = 0.0;
  if (!q.empty()) {
    const double e2 = take(-2.0);
    qsum += q[0] * (n2 - 0.5 * e2);
    if (q.size() > 1) {
      const double e4 = take(-4.0);
      qsum += q[1] * (n2 - 1.5 * e2 + 0.375 * e4);
    }
  }
  const double sign = (so.M() % 2 == 0) ? -1.0 : 1.0;
  const double value = (qsum + sign * (e - v * n2)) / n2;
  if (kind == Kind::exact) return exact(value);
  return {value, kind, "N^-2 [" + errors + "]"};
}

ExpectedValue expected_wce2_spherical_assembled(std::size_t n, const wce::SobolevOrder& so) {
  return expected_wce2_assembled(n, so, [n](double s) { return expected_energy_spherical(n, s); });
}

ExpectedValue expected_wce2_elliptic(std::size_t n, const wce::SobolevOrder& so) {
  return expected_wce2_assembled(n, so, [n](double s) { return expected_energy_elliptic(n, s); });
}

ExpectedValue expected_wce2_harmonic_quadrature(int d, int degree, double s, int nodes) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (degree < 0) throw DomainError("harmonic degree must be >= 0");
  if (!(s > 0.5 * d && s < 0.5 * d + 1.0)) {
    throw DomainError("harmonic-ensemble integral needs d/2 < s < d/2 + 1 (s = " + fmt(s) + ")");
  }
  if (nodes == 0) nodes = 4 * degree + 64;
  if (nodes <= degree) throw DomainError("Gauss-Jacobi rule needs more than L nodes");
  const auto params = specfun::JacobiParams::for_sphere(d);
  const auto rule = specfun::gauss_jacobi(nodes, s - 1.0, 0.5 * d - 1.0);
  const double integral = rule.integrate([&](double t) {
    const double p = specfun::jacobi_eval(params, degree, t);
    return p * p;
  });
  const double p1 = specfun::binomial(degree + 0.5 * d, degree);
  const double cd = std::exp(specfun::log_gamma(0.5 * (d + 1)) - specfun::log_gamma(0.5 * d)) /
                    std::sqrt(std::numbers::pi);
  return exact(cd * std::pow(2.0, s - 0.5 * d) * integral / (p1 * p1));
}

double rescaled_jacobi_integral(int d, double a, int degree) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (!(a > -1.0 && a < d)) throw DomainError("the rescaled Jacobi integral needs -1 < a < d (a = " + fmt(a) + ")");
  if (degree < 1) throw DomainError("the rescaled Jacobi integral needs L >= 1");
  const double lambda = 0.5 * (d - 2);
  const auto params = specfun::JacobiParams::for_sphere(d);
  const auto rule = specfun::gauss_jacobi(degree + 2, lambda - 0.5 * a, lambda);
  const double integral = rule.integrate([&](double t) {
    const double p = specfun::jacobi_eval(params, degree, t);
    return p * p;
  });
  return std::pow(static_cast<double>(degree), -a) * integral;
}

double rescaled_jacobi_limit(int d, double a) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (!(a > -1.0 && a < d)) {
    throw DomainError("the Bessel integral converges only for -1 < a < d (a = " + fmt(a) + ")");
  }
  const double nu = 0.5 * d;
  const double integral =
      bessel_head(nu, a) + bessel_middle(nu, a, kBesselCut) + bessel_tail(nu, a, kBesselCut);
  return std::pow(2.0, 0.5 * a + d) * integral;
}

}  // namespace sphereqmc::closedforms
