#include "helson/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace helson {
namespace {

// Deterministic, dense start vector.
Eigen::VectorXd start_vector(Eigen::Index dim) {
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
  return v.normalized();
}

// Orthogonalizes v against the first `cols` columns of V (two passes). Returns
// the norm after orthogonalization.
double orthogonalize(const Eigen::MatrixXd& V, Eigen::Index cols, Eigen::VectorXd& v) {
  for (int pass = 0; pass < 2; ++pass) {
    if (cols == 0) break;
    const Eigen::VectorXd c = V.leftCols(cols).transpose() * v;
    v.noalias() -= V.leftCols(cols) * c;
  }
  return v.norm();
}

}  // namespace

EigenResult top_eigenpairs(const LinearOperator& op, Eigen::Index dim, Eigen::Index count,
                           const LanczosOptions& options) {
  if (dim < 1) throw ConfigError("top_eigenpairs: dimension must be positive");
  if (count < 1 || count > dim) throw ConfigError("top_eigenpairs: requires 1 <= count <= dim");

  const Eigen::Index m =
      std::min(dim, options.basis > 0 ? std::max(options.basis, count + 2)
                                      : std::max<Eigen::Index>(2 * count + 20, 40));
  const Eigen::Index keep = std::min(m - 1, count + std::max<Eigen::Index>(count / 2, 4));

  Eigen::MatrixXd V(dim, m), AV(dim, m);
  Eigen::Index j = 0;
  Eigen::VectorXd next = start_vector(dim);
  unsigned fill_seed = 1;

  Eigen::VectorXd best;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    while (j < m) {
      Eigen::VectorXd v = next;
      const double before = v.norm();
      double after = orthogonalize(V, j, v);
      // Krylov space exhausted: continue with a fresh direction.
      while (!(after > 1e-10 * std::max(before, 1e-300))) {
        v = Eigen::VectorXd::Zero(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
          v(i) = std::sin(static_cast<double>(fill_seed * 7919u + 13u * static_cast<unsigned>(i)));
        ++fill_seed;
        after = orthogonalize(V, j, v);
        if (fill_seed > 64) break;
      }
      V.col(j) = v / after;
      AV.col(j) = op(V.col(j));
      if (AV.col(j).size() != dim || !AV.col(j).allFinite())
        throw NumericError("top_eigenpairs: operator produced a non-finite or mis-sized vector");
      next = AV.col(j);
      ++j;
    }

    Eigen::MatrixXd T = V.leftCols(j).transpose() * AV.leftCols(j);
    T = 0.5 * (T + T.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(T);
    const Eigen::VectorXd& theta = small.eigenvalues();
    const Eigen::MatrixXd& S = small.eigenvectors();

    const Eigen::MatrixXd S_top = S.rightCols(count);
    const Eigen::MatrixXd Y = V.leftCols(j) * S_top;
    const Eigen::MatrixXd AY = AV.leftCols(j) * S_top;
    const Eigen::VectorXd top = theta.tail(count);
    const Eigen::MatrixXd R = AY - Y * top.asDiagonal();
    const double scale = std::max(theta.cwiseAbs().maxCoeff(), 1e-300);
    const Eigen::VectorXd res = R.colwise().norm().transpose() / scale;
    best = top;

    if (res.maxCoeff() <= options.tol || j == dim) {
      return {top, Y, res.maxCoeff()};
    }

    // Thick restart: keep the leading Ritz vectors, continue from the residual
    // of the least converged wanted pair.
    Eigen::Index worst = 0;
    res.maxCoeff(&worst);
    const Eigen::MatrixXd S_keep = S.rightCols(keep);
    const Eigen::MatrixXd V_keep = V.leftCols(j) * S_keep;
    const Eigen::MatrixXd AV_keep = AV.leftCols(j) * S_keep;
    V.leftCols(keep) = V_keep;
    AV.leftCols(keep) = AV_keep;
    j = keep;
    next = R.col(worst);
  }
  throw IterationError("top_eigenpairs: residual tolerance not reached",
                       std::vector<double>(best.data(), best.data() + best.size()));
}

Eigen::Index count_above(std::span<const double> values, double threshold) {
  return static_cast<Eigen::Index>(
      std::count_if(values.begin(), values.end(), [&](double v) { return v > threshold; }));
}

}  // namespace helson
