#pragma once

#include <complex>
#include <string>

namespace helson {

// ---------------------------------------------------------------------------
// Kernel functions of integral Hankel operators
// ---------------------------------------------------------------------------

enum class KernelFamily {
  Carleman,    ///< 1/t
  HStar,       ///< e^{-t/2}/t, explicitly diagonalised by the Bessel transform
  H0,          ///< zeta(t+1) - 1, partner of the multiplicative Hilbert matrix
  HA,          ///< zeta(t+1) e^{-at/2}, partner of M(g_a)
  WA,          ///< e^{-at/2} (zeta(t+1) - 1), HA with its rank-one part removed
  RankOneExp,  ///< e^{-at/2}, the rank-one Hankel operator with eigenvalue 1/a
};

/// A kernel family together with its real parameter. The parameter is only
/// meaningful (and must be positive) for HA, WA and RankOneExp.
struct KernelSpec {
  KernelFamily family = KernelFamily::Carleman;
  double a = 0.0;

  static KernelSpec carleman() { return {KernelFamily::Carleman, 0.0}; }
  static KernelSpec hstar() { return {KernelFamily::HStar, 0.0}; }
  static KernelSpec h0() { return {KernelFamily::H0, 0.0}; }
  static KernelSpec ha(double a) { return {KernelFamily::HA, a}; }
  static KernelSpec wa(double a) { return {KernelFamily::WA, a}; }
  static KernelSpec rank_one_exp(double a) { return {KernelFamily::RankOneExp, a}; }

  bool parameterized() const noexcept {
    return family == KernelFamily::HA || family == KernelFamily::WA ||
           family == KernelFamily::RankOneExp;
  }

  /// Throws ConfigError when a parameterized family lacks a positive finite a.
  void validate() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

std::string to_string(KernelFamily family);
/// Inverse of to_string; throws ConfigError on unknown names.
KernelFamily kernel_family_from_string(const std::string& name);

/// h(t) for the given family, t > 0.
double kernel_eval(const KernelSpec& spec, double t);

// ---------------------------------------------------------------------------
// Riemann zeta on the real axis
// ---------------------------------------------------------------------------

/// zeta(t) for real t > 1, relative error below 1e-13.
double riemann_zeta_real(double t);

/// zeta(t) - 1 computed without cancellation, so that it keeps full relative
/// precision when zeta(t) is within rounding of 1.
double zeta_minus_one(double t);

/// zeta(1 + s) - 1 for s > 0. Takes the offset from the pole directly, so the
/// 1/s singularity is not degraded by rounding 1 + s.
double zeta_one_plus_minus_one(double s);

// ---------------------------------------------------------------------------
// Gamma and Bessel functions
// ---------------------------------------------------------------------------

/// Principal branch of log Gamma(z) for Re z > 0.
std::complex<double> log_gamma_complex(std::complex<double> z);

/// K_{ik}(x) for 0 <= k <= 20 and x > 0. Real-valued for imaginary order.
double bessel_k_imag_order(double k, double x);

/// Power-series route: K_{ik} = -pi Im(I_{ik}) / sinh(pi k), or the real-order
/// K_0 series when k == 0. Accurate for x up to a few units.
double bessel_k_imag_order_series(double k, double x);

/// Integral route: K_{ik}(x) = int_0^inf e^{-x cosh s} cos(ks) ds on a truncated
/// composite Gauss-Legendre rule. Absolute accuracy about 1e-16.
double bessel_k_imag_order_integral(double k, double x);

inline constexpr double kBesselMaxOrder = 20.0;
inline constexpr double kBesselBranchSwitch = 1.0;

// ---------------------------------------------------------------------------
// Spectral curve of H(h_*) and its generalised eigenfunctions
// ---------------------------------------------------------------------------

struct EigenCurveValue {
  double k;
  double lambda;
};

/// lambda(k) = pi / cosh(pi k), k >= 0.
double lambda_of_k(double k);
/// Inverse of lambda_of_k on (0, pi].
double k_of_lambda(double lambda);

inline EigenCurveValue eigen_curve_value(double k) { return {k, lambda_of_k(k)}; }

/// Generalised eigenfunction psi_k(t) = (1/pi) sqrt(2k sinh(pi k)) t^{-1/2} K_{ik}(t/2).
double psi_k(double k, double t);

}  // namespace helson
