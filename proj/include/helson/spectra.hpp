#pragma once

#include <Eigen/Core>
#include <array>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "helson/eigensolve.hpp"
#include "helson/errors.hpp"
#include "helson/gridquad.hpp"
#include "helson/specialfn.hpp"

namespace helson {

/// Nystrom matrices of h_a(t) = zeta(t+1) e^{-at/2} for many a on one grid:
/// A(a) = D_a Z D_a with Z_ij = sqrt(w_i w_j) zeta(1 + t_i + t_j) and
/// D_a = diag(e^{-a t_i / 2}). Z is assembled once.
class ZetaHankelFamily {
 public:
  explicit ZetaHankelFamily(const GridSpec& spec);

  const Grid& grid() const noexcept { return grid_; }
  const GridSpec& spec() const noexcept { return spec_; }
  SymmetricMatrix matrix(double a) const;
  /// Largest `count` eigenvalues of A(a), ascending.
  Eigen::VectorXd top_eigenvalues(double a, Eigen::Index count = 1) const;
  double top_eigenvalue(double a) const { return top_eigenvalues(a, 1)(0); }

 private:
  GridSpec spec_;
  Grid grid_;
  Eigen::MatrixXd z_;
};

/// Top eigenvalue of the Helson truncation (a, n_min, N) by Lanczos.
double helson_top_eigenvalue(double a, int n_min, int N);

/// Grid refined by doubling panels per decade.
GridSpec refine(const GridSpec& g);
/// Grid widened by `decades` on each side (log-symmetric).
GridSpec widen(const GridSpec& g, double decades);
/// Three-level ladder ending at `g`: each level widens the previous by two decades per side.
std::vector<GridSpec> widening_ladder(const GridSpec& g, int levels = 3);

// ---------------------------------------------------------------------------

struct CurveConfig {
  GridSpec grid = kReferenceGrid;
  std::vector<int> truncation_orders{128, 512};
  double margin = 1e-6;      ///< "above pi" detection margin
  double bound_slack = 0.01; ///< slack on the upper bound pi + 1/a
};

struct CurvePoint {
  double a = 0.0;
  double lambda_nystrom = 0.0;
  std::vector<std::pair<int, double>> lambda_trunc;  ///< (N, top eigenvalue)
  bool above_pi = false;
  bool lower_ok = true;  ///< lambda > 1/a (checked where above_pi)
  bool upper_ok = true;  ///< lambda <= pi + 1/a + slack (checked where above_pi)

  double lower_bound() const { return 1.0 / a; }
  double upper_bound() const;
};

std::vector<CurvePoint> lambda_curve(const std::vector<double>& a_values,
                                     const CurveConfig& config = {});
/// Whether lambda_nystrom is non-increasing in a up to `slack`.
bool curve_non_increasing(const std::vector<CurvePoint>& curve, double slack = 1e-6);

// ---------------------------------------------------------------------------

struct AStarConfig {
  GridSpec level1 = kReferenceGrid;
  GridSpec level2{1e-14, 1e12, 6, 16};
  double a_lo = 0.3;
  double a_hi = 2.0;
  int scan_points = 18;
  double margin_floor = 1e-6;

  /// level1 = g; level2 widens t_min by two decades and adds two panels per decade.
  static AStarConfig for_grid(const GridSpec& g) {
    AStarConfig c;
    c.level1 = g;
    c.level2 = {g.t_min * 1e-2, g.t_max, g.panels_per_decade + 2, g.nodes_per_panel};
    return c;
  }
};

struct IndicatorSample {
  double a = 0.0;
  double lambda_level1 = 0.0;
  double lambda_level2 = 0.0;
  double margin = 0.0;
  bool level1 = false;  ///< lambda_level1 > pi + margin
  bool level2 = false;  ///< lambda_level2 > pi + margin
};

struct LevelBracket {
  GridSpec grid;
  double a_lo = 0.0;
  double a_hi = 0.0;
};

struct AStarEstimate {
  double a_lo = 0.0;  ///< final bracket (level 2)
  double a_hi = 0.0;
  std::vector<LevelBracket> levels;
  double indicator_margin = 0.0;  ///< delta at the midpoint of the final bracket
  std::vector<IndicatorSample> scan;
  std::vector<IndicatorSample> evaluations;  ///< every indicator evaluation, scan included

  bool levels_overlap() const;
};

/// Indicator scan that is not of the form true..true false..false.
class IndicatorScanError : public NumericError {
 public:
  IndicatorScanError(const std::string& what, std::vector<IndicatorSample> scan)
      : NumericError(what), scan_(std::move(scan)) {}
  const std::vector<IndicatorSample>& scan() const noexcept { return scan_; }

 private:
  std::vector<IndicatorSample> scan_;
};

AStarEstimate estimate_a_star(double tolerance, const AStarConfig& config = {});

// ---------------------------------------------------------------------------

struct HelsonSpec {
  double a = 0.0;
  int n_min = 1;
  int N = 512;
};

using SpectrumTarget = std::variant<KernelSpec, HelsonSpec>;

inline constexpr int kHistogramBins = 32;

struct LadderLevel {
  std::string label;
  Eigen::Index dim = 0;
  double top = 0.0;
  double fill = 0.0;
};

struct SpectrumReport {
  Eigen::VectorXd eigenvalues;  ///< ascending, finest level
  std::array<Eigen::Index, kHistogramBins> histogram{};
  Eigen::Index count_above_pi = 0;    ///< > pi + 1e-8
  Eigen::Index count_below_zero = 0;  ///< < -1e-10
  double fill = 0.0;
  std::vector<LadderLevel> ladder;
};

std::array<Eigen::Index, kHistogramBins> spectrum_histogram(const Eigen::VectorXd& values);
double fill_metric(const std::array<Eigen::Index, kHistogramBins>& histogram);

/// Kernel targets use the widening ladder ending at `grid`; Helson targets use N/4, N/2, N.
SpectrumReport spectrum_report(const SpectrumTarget& target, const GridSpec& grid = kReferenceGrid);

// ---------------------------------------------------------------------------

struct EquivalenceReport {
  double a = 0.0;
  int n_min = 1;
  int N = 0;
  GridSpec grid;
  GridSpec refined;
  Eigen::VectorXd gram_rows;       ///< top eigenvalues of F F^T, descending
  Eigen::VectorXd gram_cols;       ///< top eigenvalues of F^T F, descending
  Eigen::VectorXd nystrom;         ///< top eigenvalues of the Nystrom H(h_a), descending
  Eigen::VectorXd gram_refined;    ///< top eigenvalues of F F^T on the refined grid
  Eigen::VectorXd nystrom_refined;
  double factor_agreement = 0.0;   ///< max |(i) - (ii)|
  double gap = 0.0;                ///< max |(ii) - (iii)|
  double gap_refined = 0.0;
};

inline constexpr Eigen::Index kEquivalenceRank = 10;

/// a = 0 selects the index base 2 and h_0; a > 0 the base 1 and h_a.
EquivalenceReport equivalence_check(double a, int N, const GridSpec& grid = kReferenceGrid);

// ---------------------------------------------------------------------------

/// Restricts the residual norms to nodes inside [t_lo, t_hi].
struct ResidualWindow {
  double t_lo = 0.0;
  double t_hi = std::numeric_limits<double>::infinity();
};

/// |A v - lambda(k) v| / (lambda(k) |v|) with A the HStar Nystrom matrix and v
/// the projection of psi_k; `eigenvalue_scale` multiplies lambda(k).
double eigenfunction_residual(double k, const GridSpec& grid = kReferenceGrid,
                              const ResidualWindow& window = {}, double eigenvalue_scale = 1.0);

// ---------------------------------------------------------------------------

struct HsGapReport {
  double value = 0.0;
  double refined = 0.0;
  double widened = 0.0;
  bool stable = false;     ///< refinement changes the value by < 5e-4 relative
  bool divergent = false;  ///< widening changes the value by > 1e-3 relative
};

/// int t |h(t) - e^{-t/2}/t|^2 dt on the grid, with refinement and widening probes.
HsGapReport hs_gap(const KernelSpec& spec, const GridSpec& grid);

// ---------------------------------------------------------------------------

struct MonotonicityReport {
  double a = 0.0;
  double b = 0.0;
  int trials = 0;
  int passes = 0;
  double lambda_a = 0.0;  ///< top eigenvalue of helson_matrix(a, N)
  double lambda_b = 0.0;
  bool eigen_ok = false;

  bool passed() const { return passes == trials && eigen_ok; }
};

inline constexpr unsigned kMonotonicitySeed = 0x5EED;

/// Compares quadratic forms of M(g_a) and M(g_b), b <= a, on random vectors.
MonotonicityReport monotonicity_check(double a, double b, int trials, int N, const GridSpec& grid);

// ---------------------------------------------------------------------------

struct MultiplicityReport {
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::Index carleman_count = 0;
  Eigen::Index hstar_count = 0;
  std::optional<double> ratio;  ///< carleman / hstar; empty when hstar_count is 0
  bool sufficient = false;      ///< both counts >= 5; otherwise the ratio is "insufficient"
};

MultiplicityReport multiplicity_diagnostic(double alpha, double beta, const GridSpec& grid = kReferenceGrid);

}  // namespace helson
