#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <functional>
#include <optional>
#include <span>

#include "helson/errors.hpp"
#include "helson/gridquad.hpp"

namespace helson {

/// Eigenvalues in ascending order, optional eigenvectors (columns, matching
/// order) and the largest relative residual |A v - lambda v| / |A|.
struct EigenResult {
  Eigen::VectorXd values;
  std::optional<Eigen::MatrixXd> vectors;
  std::optional<double> residual_max;
};

inline constexpr Eigen::Index kDenseDimensionCap = 4096;

/// Full symmetric eigendecomposition of the lower triangle of `a`.
template <typename Derived>
EigenResult eigen_full(const Eigen::MatrixBase<Derived>& a, bool want_vectors = false) {
  if (a.rows() != a.cols()) throw ConfigError("eigen_full: matrix must be square");
  if (a.rows() > kDenseDimensionCap)
    throw ConfigError("eigen_full: dimension exceeds the dense cap of 4096");
  if (a.rows() == 0) return {Eigen::VectorXd(), std::nullopt, std::nullopt};
  const Eigen::MatrixXd m = a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigen_full: decomposition failed");

  EigenResult out;
  out.values = solver.eigenvalues();
  if (!out.values.allFinite()) throw NumericError("eigen_full: non-finite eigenvalue");
  if (want_vectors) {
    out.vectors = solver.eigenvectors();
    const double scale = std::max(out.values.cwiseAbs().maxCoeff(), 1e-300);
    const Eigen::MatrixXd r = m.template selfadjointView<Eigen::Lower>() * *out.vectors -
                              *out.vectors * out.values.asDiagonal();
    out.residual_max = r.colwise().norm().maxCoeff() / scale;
  }
  return out;
}

inline EigenResult eigen_full(const SymmetricMatrix& a, bool want_vectors = false) {
  return eigen_full(a.dense(), want_vectors);
}

/// Symmetric linear operator x -> A x.
using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LanczosOptions {
  double tol = 1e-10;      ///< residual bound relative to the largest Ritz value
  int max_restarts = 200;
  Eigen::Index basis = 0;  ///< 0 picks max(2 count + 20, 40)
};

/// Largest `count` eigenpairs of a symmetric operator by restarted Lanczos with
/// full reorthogonalization. Values ascending. Throws IterationError carrying
/// the best estimates when the residual tolerance is not reached.
EigenResult top_eigenpairs(const LinearOperator& op, Eigen::Index dim, Eigen::Index count,
                           const LanczosOptions& options = {});

template <typename Derived>
EigenResult top_eigenpairs(const Eigen::MatrixBase<Derived>& a, Eigen::Index count,
                           const LanczosOptions& options = {}) {
  const Eigen::MatrixXd& m = a.derived();
  return top_eigenpairs([&m](const Eigen::VectorXd& x) -> Eigen::VectorXd { return m * x; },
                        m.rows(), count, options);
}

inline EigenResult top_eigenpairs(const SymmetricMatrix& a, Eigen::Index count,
                                  const LanczosOptions& options = {}) {
  return top_eigenpairs(a.dense(), count, options);
}

/// Number of values strictly greater than the threshold.
Eigen::Index count_above(std::span<const double> values, double threshold);
inline Eigen::Index count_above(const Eigen::VectorXd& values, double threshold) {
  return count_above(std::span<const double>(values.data(), values.size()), threshold);
}

}  // namespace helson
