#include "sphereqmc/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphereqmc/error.hpp"

namespace sphereqmc::specfun {
namespace {

constexpr double kPi = std::numbers::pi;

// Stirling remainder S(x) = Σ B_{2k} / (2k(2k-1) x^{2k-1}), valid for x ≥ 10.
double stirling_tail(double x) {
  static constexpr std::array<double, 7> kCoeff = {
      1.0 / 12.0,          -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0,
      1.0 / 156.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double sum = 0.0;
  double p = inv;
  for (double c : kCoeff) {
    sum += c * p;
    p *= inv2;
  }
  return sum;
}

constexpr double kStirlingThreshold = 10.0;

void check_degree(int n) {
  if (n < 0 || n > kMaxDegree) {
    throw DomainError("polynomial degree " + std::to_string(n) + " outside [0, " +
                      std::to_string(kMaxDegree) + "]");
  }
}

double clamp_unit(double t) {
  if (!(std::abs(t) <= 1.0 + 1e-12)) {
    throw DomainError("polynomial argument outside [-1, 1]: " + std::to_string(t));
  }
  return std::clamp(t, -1.0, 1.0);
}

__extension__ using u128 = unsigned __int128;

std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw DomainError("dimension count overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
  }
  double shift = 0.0;
  if (x < kStirlingThreshold) {
    double prod = 1.0;
    while (x < kStirlingThreshold) {
      prod *= x;
      x += 1.0;
    }
    shift = std::log(prod);
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * kPi) + stirling_tail(x) - shift;
}

double gamma(double x) {
  if (x > 0.0) return std::exp(log_gamma(x));
  if (x == std::floor(x)) {
    throw DomainError("gamma has poles at non-positive integers, got " + std::to_string(x));
  }
  // Reflection: Γ(x) Γ(1-x) = π / sin(πx).
  return kPi / (std::sin(kPi * x) * std::exp(log_gamma(1.0 - x)));
}

double gamma_ratio(double x, double a) {
  if (!(x > 0.0) || !(x + a > 0.0)) {
    throw DomainError("gamma_ratio requires x > 0 and x + a > 0");
  }
  if (a == 0.0) return 1.0;
  // Shift both arguments into the Stirling range:
  //   Γ(x)/Γ(x+a) = Γ(x+k)/Γ(x+a+k) · (x+a)_k / (x)_k.
  double correction = 1.0;
  while (std::min(x, x + a) < kStirlingThreshold) {
    correction *= (x + a) / x;
    x += 1.0;
  }
  // log Γ(x) - log Γ(x+a) without forming the two large logs separately.
  const double log_ratio = -a * std::log(x) - (x + a - 0.5) * std::log1p(a / x) + a +
                           stirling_tail(x) - stirling_tail(x + a);
  return correction * std::exp(log_ratio);
}

double pochhammer(double x, int n) {
  if (n < 0) throw DomainError("pochhammer requires n >= 0");
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x + k;
  return r;
}

double binomial(double x, int k) {
  if (k < 0) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r *= (x - k + j) / j;
  return r;
}

void JacobiParams::validate() const {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("Jacobi parameters must exceed -1");
  }
}

JacobiParams JacobiParams::for_sphere(int d) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  const double lambda = (d - 2) / 2.0;
  return {1.0 + lambda, lambda};
}

double jacobi_eval(const JacobiParams& params, int n, double t) {
  params.validate();
  check_degree(n);
  t = clamp_unit(t);
  const double a = params.alpha;
  const double b = params.beta;
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * ((a - b) + (a + b + 2.0) * t);
  const double ab2 = a * a - b * b;
  for (int m = 2; m <= n; ++m) {
    const double s = 2.0 * m + a + b;
    const double c0 = 2.0 * m * (m + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * t + ab2);
    const double c2 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s;
    const double next = (c1 * cur - c2 * prev) / c0;
    prev = cur;
    cur = next;
  }
  return cur;
}

JacobiValue jacobi_eval_with_derivative(const JacobiParams& params, int n, double t) {
  const double value = jacobi_eval(params, n, t);
  if (n == 0) return {value, 0.0};
  const double scale = 0.5 * (n + params.alpha + params.beta + 1.0);
  const double deriv =
      scale * jacobi_eval({params.alpha + 1.0, params.beta + 1.0}, n - 1, t);
  return {value, deriv};
}

void gegenbauer_all(int d, double t, std::span<double> out) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (out.empty()) return;
  check_degree(static_cast<int>(out.size()) - 1);
  t = clamp_unit(t);
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = t;
  // (ℓ+d-1) P_{ℓ+1} = (2ℓ+d-1) t P_ℓ - ℓ P_{ℓ-1}, normalized so P_ℓ(1) = 1.
  for (std::size_t l = 1; l + 1 < out.size(); ++l) {
    const double ld = static_cast<double>(l);
    out[l + 1] = ((2.0 * ld + d - 1.0) * t * out[l] - ld * out[l - 1]) / (ld + d - 1.0);
  }
}

double gegenbauer_eval(int d, int l, double t) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  check_degree(l);
  t = clamp_unit(t);
  if (l == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int k = 1; k < l; ++k) {
    const double next = ((2.0 * k + d - 1.0) * t * cur - k * prev) / (k + d - 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

constexpr double kBesselSwitch = 12.0;

double bessel_series(double nu, double t) {
  if (t == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * t;
  double term = std::exp(nu * std::log(half) - log_gamma(nu + 1.0));
  double sum = term;
  const double q = -half * half;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (k > half && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

// Hankel expansion, truncated at the smallest term.
double bessel_asymptotic(double nu, double t) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * t);
    const double mag = std::abs(term);
    if (mag >= last || mag < 1e-17) break;
    last = mag;
    // Signs follow (-1)^{⌊k/2⌋} alternating between Q (odd k) and P (even k).
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1) {
      q += sign * term;
    } else {
      p += sign * term;
    }
  }
  const double omega = t - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * t)) * (p * std::cos(omega) - q * std::sin(omega));
}

}  // namespace

double bessel_j(double nu, double t) {
  if (!(nu >= 0.0) || !(t >= 0.0)) {
    throw DomainError("bessel_j requires nu >= 0 and t >= 0");
  }
  return t <= kBesselSwitch ? bessel_series(nu, t) : bessel_asymptotic(nu, t);
}

double zeta(double s) {
  if (!(s > 1.0)) throw DomainError("zeta implemented for real s > 1 only");
  // Euler-Maclaurin with n = 16 and eight Bernoulli corrections.
  constexpr int n = 16;
  static constexpr std::array<double, 8> kBernoulli = {
      1.0 / 6.0,  -1.0 / 30.0,       1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0, -691.0 / 2730.0,   7.0 / 6.0,  -3617.0 / 510.0};
  double sum = 0.0;
  for (int k = n - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double nd = n;
  sum += std::pow(nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nd, -s);
  // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j-2) · n^{-s-2j+1}
  double rising = s;                  // (s)_{2j-1}
  double factorial = 2.0;             // (2j)!
  double power = std::pow(nd, -s - 1.0);
  for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
    sum += kBernoulli[j - 1] / factorial * rising * power;
    const double jj = static_cast<double>(j);
    rising *= (s + 2.0 * jj - 1.0) * (s + 2.0 * jj);
    factorial *= (2.0 * jj + 1.0) * (2.0 * jj + 2.0);
    power /= nd * nd;
  }
  return sum;
}

std::uint64_t harmonic_dimension(int d, int l) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (l < 0) throw DomainError("harmonic degree must be >= 0");
  if (l == 0) return 1;
  if (d == 1) return 2;
  const auto ul = static_cast<std::uint64_t>(l);
  const auto ud = static_cast<std::uint64_t>(d);
  return checked_binomial(ul + ud, ud) - checked_binomial(ul + ud - 2, ud);
}

std::uint64_t polynomial_space_dimension(int d, int L) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (L < 0) throw DomainError("polynomial degree must be >= 0");
  const auto uL = static_cast<std::uint64_t>(L);
  const auto ud = static_cast<std::uint64_t>(d);
  return checked_binomial(uL + ud, ud) + checked_binomial(uL + ud - 1, ud);
}

}  // namespace sphereqmc::specfun
