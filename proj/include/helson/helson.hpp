#pragma once

#include <Eigen/Core>

#include "helson/gridquad.hpp"

namespace helson {

/// Finite section of the Helson matrix {g_a(nm)}, g_a(n) = 1/(sqrt(n)(a + log n)),
/// with indices n, m in [n_min, N]. a = 0 is only allowed with n_min = 2
/// (the multiplicative Hilbert matrix).
struct HelsonTruncation {
  double a = 0.0;
  int n_min = 1;
  int N = 0;
  SymmetricMatrix matrix;

  /// Matrix index of the integer n.
  Eigen::Index index_of(int n) const { return n - n_min; }
  double entry(int n, int m) const { return matrix(index_of(n), index_of(m)); }
};

/// g_a(n), n >= 1.
double helson_symbol(double a, double n);

/// Truncation of M(g_a) to indices 1..N; a > 0.
HelsonTruncation helson_matrix(double a, int N);

/// Truncation of M_2(g_0) to indices 2..N; N >= 2.
HelsonTruncation multiplicative_hilbert_matrix(int N);

/// Matrix-free action of a Helson truncation; entries are generated on the fly
/// so that large N needs O(N) storage.
class HelsonOperator {
 public:
  HelsonOperator(double a, int n_min, int N);

  Eigen::Index dim() const noexcept { return inv_sqrt_.size(); }
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

 private:
  double a_;
  Eigen::VectorXd inv_sqrt_;
  Eigen::VectorXd log_n_;
};

/// Discretized factor map F[n][j] = sqrt(w_j) e^{-a t_j / 2} n^{-1/2 - t_j},
/// rows n = n_min..N. F F^T approximates the Helson truncation and F^T F is
/// the Nystrom matrix of the kernel e^{-at/2} sum_{n_min<=n<=N} n^{-1-t}.
/// The grid must carry the t-integral to a tail below 1e-12.
Eigen::MatrixXd factor_map(double a, int n_min, int N, const Grid& grid);

/// Bound on the t-integral mass beyond t_max used by factor_map's check.
double factor_map_tail_bound(double a, int n_min, double t_max);

/// int_0^inf e^{-at} |f(t)|^2 dt with f(t) = sum_n x_n n^{-1/2-t}, n = n_min..,
/// evaluated on the grid. Equals x^T M(g_a) x up to quadrature error.
double quadratic_form_exp(double a, const Eigen::VectorXd& x, const Grid& grid, int n_min = 1);

}  // namespace helson
