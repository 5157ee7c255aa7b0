#include "helson/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "helson/csv.hpp"
#include "helson/helson.hpp"

namespace helson {
namespace {

using std::numbers::pi;

constexpr double kAbovePi = 1e-8;
constexpr double kBelowZero = -1e-10;
constexpr Eigen::Index kLanczosDenseLimit = 4096;

Eigen::VectorXd top_descending(const Eigen::VectorXd& ascending, Eigen::Index r) {
  const Eigen::Index n = std::min(r, ascending.size());
  return ascending.tail(n).reverse();
}

double max_abs_diff(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = std::min(x.size(), y.size());
  return (x.head(n) - y.head(n)).cwiseAbs().maxCoeff();
}

Eigen::VectorXd dense_top(const SymmetricMatrix& m, Eigen::Index r) {
  return top_descending(top_eigenpairs(m, std::min(r, m.dim())).values, r);
}

}  // namespace

// ---------------------------------------------------------------------------

ZetaHankelFamily::ZetaHankelFamily(const GridSpec& spec) : spec_(spec), grid_(build_grid(spec)) {
  const Eigen::VectorXd sw = grid_.weights.cwiseSqrt();
  z_ = SymmetricMatrix::generate(grid_.size(), [&](Eigen::Index i, Eigen::Index j) {
         return sw(i) * sw(j) * (1.0 + zeta_one_plus_minus_one(grid_.nodes(i) + grid_.nodes(j)));
       }).dense();
}

SymmetricMatrix ZetaHankelFamily::matrix(double a) const {
  KernelSpec::ha(a).validate();
  const Eigen::VectorXd d = (-0.5 * a * grid_.nodes.array()).exp().matrix();
  return SymmetricMatrix::from_upper(d.asDiagonal() * z_ * d.asDiagonal());
}

Eigen::VectorXd ZetaHankelFamily::top_eigenvalues(double a, Eigen::Index count) const {
  KernelSpec::ha(a).validate();
  const Eigen::VectorXd d = (-0.5 * a * grid_.nodes.array()).exp().matrix();
  // Nodes where e^{-a t/2} underflows contribute exact zero rows.
  Eigen::Index active = 0;
  while (active < d.size() && d(active) > 0.0) ++active;
  const Eigen::MatrixXd zs = z_.topLeftCorner(active, active);
  const Eigen::VectorXd ds = d.head(active);
  const LinearOperator op = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return ds.cwiseProduct(zs * ds.cwiseProduct(x));
  };
  return top_eigenpairs(op, active, std::min(count, active)).values;
}

double helson_top_eigenvalue(double a, int n_min, int N) {
  if (N - n_min + 1 <= kLanczosDenseLimit) {
    const HelsonTruncation t = n_min == 2 && a == 0.0 ? multiplicative_hilbert_matrix(N)
                                                      : helson_matrix(a, N);
    return top_eigenpairs(t.matrix, 1).values(0);
  }
  const HelsonOperator op(a, n_min, N);
  return top_eigenpairs([&op](const Eigen::VectorXd& x) { return op(x); }, op.dim(), 1).values(0);
}

GridSpec refine(const GridSpec& g) {
  GridSpec r = g;
  r.panels_per_decade *= 2;
  return r;
}

GridSpec widen(const GridSpec& g, double decades) {
  GridSpec r = g;
  r.t_min = g.t_min * std::pow(10.0, -decades);
  r.t_max = g.t_max * std::pow(10.0, decades);
  return r;
}

std::vector<GridSpec> widening_ladder(const GridSpec& g, int levels) {
  std::vector<GridSpec> out;
  for (int l = levels - 1; l >= 0; --l) out.push_back(widen(g, -2.0 * l));
  return out;
}

// ---------------------------------------------------------------------------

double CurvePoint::upper_bound() const { return pi + 1.0 / a; }

std::vector<CurvePoint> lambda_curve(const std::vector<double>& a_values, const CurveConfig& config) {
  for (double a : a_values)
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("curve.a: all a values must be positive");
  for (int n : config.truncation_orders)
    if (n < 1) throw ConfigError("curve.N: truncation orders must be >= 1");
  const ZetaHankelFamily family(config.grid);

  std::vector<CurvePoint> out;
  for (double a : a_values) {
    CurvePoint p;
    p.a = a;
    p.lambda_nystrom = family.top_eigenvalue(a);
    for (int n : config.truncation_orders) p.lambda_trunc.emplace_back(n, helson_top_eigenvalue(a, 1, n));
    p.above_pi = p.lambda_nystrom > pi + config.margin;
    if (p.above_pi) {
      p.lower_ok = p.lambda_nystrom > p.lower_bound();
      p.upper_ok = p.lambda_nystrom <= p.upper_bound() + config.bound_slack;
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool curve_non_increasing(const std::vector<CurvePoint>& curve, double slack) {
  std::vector<const CurvePoint*> sorted;
  for (const auto& p : curve) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](auto* x, auto* y) { return x->a < y->a; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i]->lambda_nystrom > sorted[i - 1]->lambda_nystrom + slack) return false;
  return true;
}

// ---------------------------------------------------------------------------

bool AStarEstimate::levels_overlap() const {
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i].a_lo > levels[i - 1].a_hi || levels[i - 1].a_lo > levels[i].a_hi) return false;
  return true;
}

AStarEstimate estimate_a_star(double tolerance, const AStarConfig& config) {
  if (!(tolerance >= 1e-3)) throw ConfigError("critical_a.tol: must be >= 1e-3");
  if (!(config.a_lo > 0.0 && config.a_hi > config.a_lo))
    throw ConfigError("critical_a.range: requires 0 < a_lo < a_hi");
  if (config.scan_points < 2) throw ConfigError("critical_a.scan_points: must be >= 2");

  const ZetaHankelFamily fam1(config.level1);
  const ZetaHankelFamily fam2(config.level2);
  std::map<double, IndicatorSample> memo;
  auto evaluate = [&](double a) -> const IndicatorSample& {
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    IndicatorSample s;
    s.a = a;
    s.lambda_level1 = fam1.top_eigenvalue(a);
    s.lambda_level2 = fam2.top_eigenvalue(a);
    s.margin = std::max(config.margin_floor, std::abs(s.lambda_level2 - s.lambda_level1));
    s.level1 = s.lambda_level1 > pi + s.margin;
    s.level2 = s.lambda_level2 > pi + s.margin;
    return memo.emplace(a, s).first->second;
  };

  AStarEstimate est;
  for (int i = 0; i < config.scan_points; ++i) {
    const double a = config.a_lo + (config.a_hi - config.a_lo) * i / (config.scan_points - 1);
    est.scan.push_back(evaluate(a));
  }

  for (int level = 1; level <= 2; ++level) {
    auto ind = [level](const IndicatorSample& s) { return level == 1 ? s.level1 : s.level2; };
    // Scan must read true..true false..false with both ends represented.
    std::size_t first_false = est.scan.size();
    for (std::size_t i = 0; i < est.scan.size(); ++i)
      if (!ind(est.scan[i])) { first_false = i; break; }
    bool monotone = first_false > 0 && first_false < est.scan.size();
    for (std::size_t i = first_false; monotone && i < est.scan.size(); ++i)
      if (ind(est.scan[i])) monotone = false;
    if (!monotone)
      throw IndicatorScanError("estimate_a_star: indicator at level " + std::to_string(level) +
                                   " is not monotone on the scan",
                               est.scan);

    double lo = est.scan[first_false - 1].a;
    double hi = est.scan[first_false].a;
    while (hi - lo > tolerance) {
      const double mid = 0.5 * (lo + hi);
      (ind(evaluate(mid)) ? lo : hi) = mid;
    }
    est.levels.push_back({level == 1 ? config.level1 : config.level2, lo, hi});
  }
  est.a_lo = est.levels.back().a_lo;
  est.a_hi = est.levels.back().a_hi;
  est.indicator_margin = evaluate(0.5 * (est.a_lo + est.a_hi)).margin;
  for (const auto& [a, s] : memo) est.evaluations.push_back(s);
  return est;
}

// ---------------------------------------------------------------------------

std::array<Eigen::Index, kHistogramBins> spectrum_histogram(const Eigen::VectorXd& values) {
  std::array<Eigen::Index, kHistogramBins> h{};
  for (double v : values) {
    if (v < 0.0 || v > pi) continue;
    const int bin = std::min(kHistogramBins - 1, static_cast<int>(v / pi * kHistogramBins));
    ++h[bin];
  }
  return h;
}

double fill_metric(const std::array<Eigen::Index, kHistogramBins>& histogram) {
  const auto filled = std::count_if(histogram.begin(), histogram.end(), [](auto c) { return c > 0; });
  return static_cast<double>(filled) / kHistogramBins;
}

SpectrumReport spectrum_report(const SpectrumTarget& target, const GridSpec& grid) {
  SpectrumReport rep;
  auto record = [&](std::string label, const SymmetricMatrix& m) {
    const EigenResult r = eigen_full(m);
    rep.eigenvalues = r.values;
    rep.histogram = spectrum_histogram(r.values);
    rep.fill = fill_metric(rep.histogram);
    rep.ladder.push_back({std::move(label), m.dim(), r.values(r.values.size() - 1), rep.fill});
  };

  if (const auto* spec = std::get_if<KernelSpec>(&target)) {
    for (const GridSpec& g : widening_ladder(grid)) {
      const Grid built = build_grid(g);
      record("t in [" + format_real(g.t_min) + ", " + format_real(g.t_max) + "]",
             discretize_hankel(*spec, built));
    }
  } else {
    const auto& h = std::get<HelsonSpec>(target);
    for (int div : {4, 2, 1}) {
      const int n = std::max(h.n_min, h.N / div);
      const HelsonTruncation t =
          h.n_min == 2 && h.a == 0.0 ? multiplicative_hilbert_matrix(n) : helson_matrix(h.a, n);
      record("N = " + std::to_string(n), t.matrix);
    }
  }
  rep.count_above_pi = count_above(rep.eigenvalues, pi + kAbovePi);
  rep.count_below_zero = static_cast<Eigen::Index>((rep.eigenvalues.array() < kBelowZero).count());
  return rep;
}

// ---------------------------------------------------------------------------

EquivalenceReport equivalence_check(double a, int N, const GridSpec& grid) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("equivalence.a: must be >= 0");
  EquivalenceReport rep;
  rep.a = a;
  rep.n_min = a == 0.0 ? 2 : 1;
  rep.N = N;
  rep.grid = grid;
  rep.refined = refine(grid);
  const KernelSpec kernel = a == 0.0 ? KernelSpec::h0() : KernelSpec::ha(a);

  const Grid g = build_grid(grid);
  const Eigen::MatrixXd F = factor_map(a, rep.n_min, N, g);
  rep.gram_rows = top_descending(eigen_full(F * F.transpose()).values, kEquivalenceRank);
  rep.gram_cols = top_descending(eigen_full(F.transpose() * F).values, kEquivalenceRank);
  rep.nystrom = dense_top(discretize_hankel(kernel, g), kEquivalenceRank);
  rep.factor_agreement = max_abs_diff(rep.gram_rows, rep.gram_cols);
  rep.gap = max_abs_diff(rep.gram_cols, rep.nystrom);

  const Grid gr = build_grid(rep.refined);
  const Eigen::MatrixXd Fr = factor_map(a, rep.n_min, N, gr);
  rep.gram_refined = top_descending(eigen_full(Fr * Fr.transpose()).values, kEquivalenceRank);
  rep.nystrom_refined = dense_top(discretize_hankel(kernel, gr), kEquivalenceRank);
  rep.gap_refined = max_abs_diff(rep.gram_refined, rep.nystrom_refined);
  return rep;
}

// ---------------------------------------------------------------------------

double eigenfunction_residual(double k, const GridSpec& grid, const ResidualWindow& window,
                              double eigenvalue_scale) {
  const Grid g = build_grid(grid);
  const SymmetricMatrix A = discretize_hankel(KernelSpec::hstar(), g);
  const Eigen::VectorXd v = project_function([k](double t) { return psi_k(k, t); }, g);
  const double lambda = eigenvalue_scale * lambda_of_k(k);
  const Eigen::VectorXd r = A.dense() * v - lambda * v;
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g.nodes(i) < window.t_lo || g.nodes(i) > window.t_hi) continue;
    num += r(i) * r(i);
    den += v(i) * v(i);
  }
  if (den == 0.0) throw NumericError("eigenfunction_residual: window contains no grid nodes");
  return std::sqrt(num / den) / lambda;
}

// ---------------------------------------------------------------------------

HsGapReport hs_gap(const KernelSpec& spec, const GridSpec& grid) {
  auto integral = [&](const GridSpec& gs) {
    const Grid g = build_grid(gs);
    return quad_integral(
        [&](double t) {
          const double d = kernel_eval(spec, t) - kernel_eval(KernelSpec::hstar(), t);
          return t * d * d;
        },
        g);
  };
  HsGapReport rep;
  rep.value = integral(grid);
  rep.refined = integral(refine(grid));
  rep.widened = integral(widen(grid, 2.0));
  const double scale = std::max(std::abs(rep.value), 1e-300);
  rep.stable = std::abs(rep.refined - rep.value) < 5e-4 * scale;
  rep.divergent = std::abs(rep.widened - rep.value) > 1e-3 * scale;
  return rep;
}

// ---------------------------------------------------------------------------

MonotonicityReport monotonicity_check(double a, double b, int trials, int N, const GridSpec& grid) {
  if (!(b > 0.0 && b <= a)) throw ConfigError("monotonicity: requires 0 < b <= a");
  if (trials < 1 || N < 1) throw ConfigError("monotonicity: trials and N must be positive");
  const Grid g = build_grid(grid);

  MonotonicityReport rep;
  rep.a = a;
  rep.b = b;
  rep.trials = trials;
  std::minstd_rand rng(kMonotonicitySeed);
  constexpr double span = static_cast<double>(std::minstd_rand::max() - std::minstd_rand::min());
  Eigen::VectorXd x(N);
  for (int trial = 0; trial < trials; ++trial) {
    for (int n = 0; n < N; ++n)
      x(n) = 2.0 * static_cast<double>(rng() - std::minstd_rand::min()) / span - 1.0;
    const double fa = quadratic_form_exp(a, x, g);
    const double fb = quadratic_form_exp(b, x, g);
    if (fa <= fb + 1e-12 * std::abs(fb)) ++rep.passes;
  }
  rep.lambda_a = helson_top_eigenvalue(a, 1, N);
  rep.lambda_b = helson_top_eigenvalue(b, 1, N);
  rep.eigen_ok = rep.lambda_a <= rep.lambda_b + 1e-10;
  return rep;
}

// ---------------------------------------------------------------------------

MultiplicityReport multiplicity_diagnostic(double alpha, double beta, const GridSpec& grid) {
  if (!(alpha > 0.0 && alpha < beta && beta < pi))
    throw ConfigError("multiplicity.window: requires 0 < alpha < beta < pi");
  const Grid g = build_grid(grid);
  auto count_in = [&](const KernelSpec& spec) {
    const Eigen::VectorXd v = eigen_full(discretize_hankel(spec, g)).values;
    return static_cast<Eigen::Index>((v.array() >= alpha && v.array() <= beta).count());
  };
  MultiplicityReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.carleman_count = count_in(KernelSpec::carleman());
  rep.hstar_count = count_in(KernelSpec::hstar());
  rep.sufficient = std::min(rep.carleman_count, rep.hstar_count) >= 5;
  if (rep.hstar_count > 0)
    rep.ratio = static_cast<double>(rep.carleman_count) / static_cast<double>(rep.hstar_count);
  return rep;
}

}  // namespace helson
