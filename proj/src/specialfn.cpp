#include "helson/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "helson/errors.hpp"
#include "helson/quadrature.hpp"

namespace helson {
namespace {

using std::numbers::pi;

// Stieltjes constants gamma_0 .. gamma_5.
constexpr std::array<double, 6> kStieltjes = {
    0.5772156649015328606065,   -0.07281584548367672486059,
    -0.00969036319287231848453, 0.00205383442030334586616,
    0.002325370065467300057468, 0.0007933238173010627017533,
};

// B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,        -1.0 / 30.0,        1.0 / 42.0,        -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0,    7.0 / 6.0,         -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0,
};

// Below this distance from the pole the Laurent expansion is used; with six
// Stieltjes constants its truncation error there is below 1e-15 relative.
constexpr double kLaurentRadius = 0.05;
constexpr int kEulerMaclaurinTerms = 10;

double zeta_laurent_minus_one(double s) {
  // zeta(1+s) = 1/s + sum_n (-1)^n gamma_n s^n / n!
  double acc = 0.0;
  double power = 1.0;
  double factorial = 1.0;
  for (std::size_t n = 0; n < kStieltjes.size(); ++n) {
    if (n > 0) {
      power *= s;
      factorial *= static_cast<double>(n);
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    acc += sign * kStieltjes[n] * power / factorial;
  }
  return 1.0 / s + (acc - 1.0);
}

double zeta_euler_maclaurin_minus_one(double s) {
  constexpr int N = kEulerMaclaurinTerms;
  double sum = 0.0;
  for (int n = N - 1; n >= 2; --n) sum += std::pow(static_cast<double>(n), -s);
  const double n_pow = std::pow(static_cast<double>(N), -s);
  double tail = N * n_pow / (s - 1.0) + 0.5 * n_pow;
  // Bernoulli corrections: B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  double rising = s;            // s (s+1) ... (s+2k-2)
  double n_term = n_pow / N;    // N^{-s-2k+1}
  double factorial = 2.0;       // (2k)!
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    const double k2 = 2.0 * static_cast<double>(j + 1);
    const double term = kBernoulli[j] / factorial * rising * n_term;
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(sum + tail)) break;
    rising *= (s + k2 - 1.0) * (s + k2);
    n_term /= static_cast<double>(N) * N;
    factorial *= (k2 + 1.0) * (k2 + 2.0);
  }
  return sum + tail;
}

// Stirling series for log Gamma(w), Re w >= 15.
std::complex<double> log_gamma_stirling(std::complex<double> w) {
  const std::complex<double> inv = 1.0 / w;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = 0.0;
  std::complex<double> p = inv;
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    const double k2 = 2.0 * static_cast<double>(j + 1);
    series += kBernoulli[j] / (k2 * (k2 - 1.0)) * p;
    p *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * pi) + series;
}

void check_bessel_domain(double k, double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("bessel_k_imag_order: x must be positive and finite");
  if (!(k >= 0.0) || k > kBesselMaxOrder)
    throw DomainError("bessel_k_imag_order: order k outside [0, 20]");
}

double bessel_k0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double harmonic = 0.0;
  double i0 = 1.0;
  double rest = 0.0;
  for (int m = 1; m < 60; ++m) {
    term *= q / (static_cast<double>(m) * m);
    harmonic += 1.0 / m;
    i0 += term;
    rest += term * harmonic;
    if (term * harmonic < 1e-18 * std::abs(rest) && term < 1e-18 * i0) break;
  }
  return -(std::log(0.5 * x) + kStieltjes[0]) * i0 + rest;
}

}  // namespace

// ---------------------------------------------------------------------------

double zeta_minus_one(double t) {
  if (!(t > 1.0)) throw DomainError("riemann_zeta_real: requires t > 1");
  return zeta_one_plus_minus_one(t - 1.0);
}

double zeta_one_plus_minus_one(double s) {
  if (!(s > 0.0)) throw DomainError("zeta_one_plus_minus_one: requires s > 0");
  if (std::isinf(s)) return 0.0;
  if (s < kLaurentRadius) return zeta_laurent_minus_one(s);
  return zeta_euler_maclaurin_minus_one(1.0 + s);
}

double riemann_zeta_real(double t) {
  const double zm1 = zeta_minus_one(t);
  return 1.0 + zm1;
}

// ---------------------------------------------------------------------------

void KernelSpec::validate() const {
  if (parameterized() && !(a > 0.0 && std::isfinite(a)))
    throw ConfigError("kernel " + to_string(family) + ": parameter a must be positive");
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Carleman: return "carleman";
    case KernelFamily::HStar: return "hstar";
    case KernelFamily::H0: return "h0";
    case KernelFamily::HA: return "ha";
    case KernelFamily::WA: return "wa";
    case KernelFamily::RankOneExp: return "rank-one";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  for (auto f : {KernelFamily::Carleman, KernelFamily::HStar, KernelFamily::H0,
                 KernelFamily::HA, KernelFamily::WA, KernelFamily::RankOneExp}) {
    if (to_string(f) == name) return f;
  }
  throw ConfigError("unknown kernel family '" + name + "'");
}

double kernel_eval(const KernelSpec& spec, double t) {
  spec.validate();
  if (!(t > 0.0)) throw DomainError("kernel_eval: requires t > 0");
  switch (spec.family) {
    case KernelFamily::Carleman:
      return 1.0 / t;
    case KernelFamily::HStar:
      return std::exp(-0.5 * t) / t;
    case KernelFamily::H0:
      return zeta_one_plus_minus_one(t);
    case KernelFamily::HA:
      return (1.0 + zeta_one_plus_minus_one(t)) * std::exp(-0.5 * spec.a * t);
    case KernelFamily::WA:
      return zeta_one_plus_minus_one(t) * std::exp(-0.5 * spec.a * t);
    case KernelFamily::RankOneExp:
      return std::exp(-0.5 * spec.a * t);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

std::complex<double> log_gamma_complex(std::complex<double> z) {
  if (!(z.real() > 0.0) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma_complex: requires Re z > 0");
  std::complex<double> shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return log_gamma_stirling(z) - shift;
}

double bessel_k_imag_order_series(double k, double x) {
  check_bessel_domain(k, x);
  if (k == 0.0) return bessel_k0_series(x);

  const double half = 0.5 * x;
  const double q = half * half;
  const std::complex<double> nu(0.0, k);
  std::complex<double> term = std::exp(-log_gamma_complex(1.0 + nu));
  std::complex<double> sum = term;
  for (int m = 1; m < 60; ++m) {
    term *= q / (static_cast<double>(m) * (static_cast<double>(m) + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  const double phase = k * std::log(half);
  const double im_i = std::sin(phase) * sum.real() + std::cos(phase) * sum.imag();
  return -pi * im_i / std::sinh(pi * k);
}

double bessel_k_imag_order_integral(double k, double x) {
  check_bessel_domain(k, x);
  // Truncate where x (cosh s - 1) = 41.5, i.e. e^{-x cosh s} < 1e-18 e^{-x}.
  constexpr double kCut = 41.5;
  const double s_max = 2.0 * std::asinh(std::sqrt(kCut / (2.0 * x)));
  const int panels = std::max(8, static_cast<int>(std::ceil(s_max * (2.0 + k / pi))));
  const GaussRule& rule = gauss_legendre(20);
  const double width = s_max / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    double panel = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      const double s = mid + 0.5 * width * rule.nodes(i);
      const double sh = std::sinh(0.5 * s);
      panel += rule.weights(i) * std::exp(-2.0 * x * sh * sh) * std::cos(k * s);
    }
    acc += 0.5 * width * panel;
  }
  return std::exp(-x) * acc;
}

double bessel_k_imag_order(double k, double x) {
  check_bessel_domain(k, x);
  return x < kBesselBranchSwitch ? bessel_k_imag_order_series(k, x)
                                 : bessel_k_imag_order_integral(k, x);
}

// ---------------------------------------------------------------------------

double lambda_of_k(double k) {
  if (!(k >= 0.0)) throw DomainError("lambda_of_k: requires k >= 0");
  return pi / std::cosh(pi * k);
}

double k_of_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= pi))
    throw DomainError("k_of_lambda: requires 0 < lambda <= pi");
  return std::acosh(pi / lambda) / pi;
}

double psi_k(double k, double t) {
  if (!(k > 0.0)) throw DomainError("psi_k: requires k > 0");
  if (!(t > 0.0)) throw DomainError("psi_k: requires t > 0");
  const double norm = std::sqrt(2.0 * k * std::sinh(pi * k)) / pi;
  return norm / std::sqrt(t) * bessel_k_imag_order(k, 0.5 * t);
}

}  // namespace helson
