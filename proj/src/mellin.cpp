#include "helson/mellin.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <ostream>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "helson/csv.hpp"
#include "helson/errors.hpp"
#include "helson/quadrature.hpp"

namespace helson {
namespace {

using std::numbers::pi;

constexpr double kTaperFraction = 0.05;
constexpr double kTailWarning = 1e-8;
constexpr double kTauWindow = 8.0;

void check_settings(const MellinSettings& s) {
  if (!(s.u_max > s.u_min) || !std::isfinite(s.u_min) || !std::isfinite(s.u_max))
    throw ConfigError("mellin.u_range: requires finite u_min < u_max");
  if (s.points < 16) throw ConfigError("mellin.points: must be >= 16");
}

Eigen::VectorXd sample_log(const ScalarFunction& f, const MellinSettings& s) {
  const double h = s.step();
  Eigen::VectorXd g(s.points);
  for (int j = 0; j < s.points; ++j) {
    const double u = s.u_min + j * h;
    const double v = std::exp(0.5 * u) * f(std::exp(u));
    if (!std::isfinite(v)) throw NumericError("mellin: non-finite sample of f");
    g(j) = v;
  }
  return g;
}

// Trapezoid weights times a raised-cosine taper over the outer ends.
Eigen::VectorXd window_weights(int points) {
  Eigen::VectorXd c = Eigen::VectorXd::Ones(points);
  c(0) = c(points - 1) = 0.5;
  const int m = std::max(1, static_cast<int>(std::lround(kTaperFraction * points)));
  for (int j = 0; j < m; ++j) {
    const double w = 0.5 * (1.0 - std::cos(pi * j / m));
    c(j) *= w;
    c(points - 1 - j) *= w;
  }
  return c;
}

MellinSample transform(const Eigen::VectorXd& g, const MellinSettings& s) {
  const int P = s.points;
  const double h = s.step();
  const int m = std::max(1, static_cast<int>(std::lround(kTaperFraction * P)));

  MellinSample out;
  out.source = s;
  const double total = g.squaredNorm();
  if (total > 0.0) {
    const double ends = g.head(m).squaredNorm() + g.tail(m).squaredNorm();
    out.tail_mass = ends / total;
    if (out.tail_mass > kTailWarning)
      out.warning = "truncation: tail mass " + format_real(out.tail_mass) +
                    " exceeds 1e-8; widen the u-range";
  }

  const Eigen::VectorXd x = g.cwiseProduct(window_weights(P));
  std::vector<double> in(x.data(), x.data() + P);
  std::vector<std::complex<double>> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, in);

  // sum_j x_j e^{+2 pi i j k / P} = conj(fwd(x)_k) for real x.
  out.tau.resize(P);
  out.values.resize(P);
  const int half = P / 2;
  for (int r = 0; r < P; ++r) {
    const int k = r - half;  // ascending frequencies -P/2 .. P - 1 - P/2
    const int idx = ((k % P) + P) % P;
    const double tau = 2.0 * pi * k / (P * h);
    out.tau(r) = tau;
    out.values(r) = h * std::conj(spec[idx]) * std::polar(1.0, tau * s.u_min);
  }
  return out;
}

}  // namespace

double MellinSettings::t_min() const { return std::exp(u_min); }
double MellinSettings::t_max() const { return std::exp(u_max); }

MellinSample mellin_critical_line(const ScalarFunction& f, const MellinSettings& settings) {
  check_settings(settings);
  return transform(sample_log(f, settings), settings);
}

double carleman_multiplier(double tau) { return pi / std::cosh(pi * tau); }

double multiplier_check(const ScalarFunction& f, const Grid& grid, const MellinSettings& settings) {
  check_settings(settings);
  Eigen::VectorXd fw(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double v = f(grid.nodes(j));
    if (!std::isfinite(v)) throw NumericError("multiplier_check: non-finite sample of f");
    fw(j) = grid.weights(j) * v;
  }
  // Nystrom interpolant of the Carleman image: (Hf)(t) = sum_j w_j f(t_j) / (t + t_j).
  const ScalarFunction hf = [&](double t) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < grid.size(); ++j) acc += fw(j) / (t + grid.nodes(j));
    return acc;
  };
  const MellinSample mf = mellin_critical_line(f, settings);
  const MellinSample mhf = mellin_critical_line(hf, settings);

  double diff = 0.0, norm = 0.0;
  for (Eigen::Index r = 0; r < mf.tau.size(); ++r) {
    if (std::abs(mf.tau(r)) > kTauWindow) continue;
    const std::complex<double> d = mhf.values(r) - carleman_multiplier(mf.tau(r)) * mf.values(r);
    diff += std::norm(d);
    norm += std::norm(mhf.values(r));
  }
  if (norm == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(diff / norm);
}

double plancherel_error(const ScalarFunction& f, const MellinSettings& settings) {
  const MellinSample m = mellin_critical_line(f, settings);
  const Eigen::Index P = m.tau.size();
  const double dtau = 2.0 * pi / (P * settings.step());
  const double lhs = m.values.squaredNorm() * dtau / (2.0 * pi);

  // Independent route: Gauss-Legendre panels in t.
  const Grid g = build_grid(settings.t_min(), settings.t_max(), kReferenceGrid.panels_per_decade,
                            kReferenceGrid.nodes_per_panel);
  const double rhs = quad_integral([&](double t) { const double v = f(t); return v * v; }, g);
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(lhs - rhs) / rhs;
}

double theta_zero(double E) {
  if (!(E > 0.0 && E <= pi)) throw DomainError("theta_zero: requires 0 < E <= pi");
  const double x = pi / E;
  // x - sqrt(x^2 - 1) evaluated as its reciprocal form to avoid cancellation.
  const double root = std::sqrt((x - 1.0) * (x + 1.0));
  return std::abs(std::log(1.0 / (x + root)) / pi);
}

void write_mellin_csv(std::ostream& out, const MellinSample& sample) {
  out << "tau,re,im\n";
  for (Eigen::Index r = 0; r < sample.tau.size(); ++r)
    out << format_real(sample.tau(r)) << ',' << format_real(sample.values(r).real()) << ','
        << format_real(sample.values(r).imag()) << '\n';
}

}  // namespace helson
