#pragma once

#include <Eigen/Core>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "helson/specialfn.hpp"

namespace helson {

/// Composite Gauss-Legendre grid on [t_min, t_max] with log-uniform panels:
/// the discrete model of L^2(R_+).
struct Grid {
  Eigen::VectorXd nodes;    ///< strictly increasing, inside (t_min, t_max)
  Eigen::VectorXd weights;  ///< strictly positive, summing to t_max - t_min
  double t_min = 0.0;
  double t_max = 0.0;
  int panels_per_decade = 0;
  int nodes_per_panel = 0;
  int panels = 0;

  Eigen::Index size() const noexcept { return nodes.size(); }
};

/// Parameters of a grid; the reference grid is the default.
struct GridSpec {
  double t_min = 1e-12;
  double t_max = 1e12;
  int panels_per_decade = 4;
  int nodes_per_panel = 16;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Reference discretization of L^2(R_+): [1e-12, 1e12], 4 panels/decade, 16 nodes/panel.
inline constexpr GridSpec kReferenceGrid{};

Grid build_grid(double t_min, double t_max, int panels_per_decade, int nodes_per_panel);
inline Grid build_grid(const GridSpec& s) {
  return build_grid(s.t_min, s.t_max, s.panels_per_decade, s.nodes_per_panel);
}

/// Dense real symmetric matrix. Symmetry is exact: only the upper triangle is
/// ever computed and it is mirrored on construction.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  /// Builds from the upper triangle of `m` (the strict lower triangle is ignored).
  static SymmetricMatrix from_upper(Eigen::MatrixXd m);

  /// Builds from an (i, j) -> value generator evaluated for i <= j.
  template <typename Generator>
    requires std::invocable<Generator&, Eigen::Index, Eigen::Index>
  static SymmetricMatrix generate(Eigen::Index dim, Generator&& gen) {
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index i = 0; i <= j; ++i) m(i, j) = gen(i, j);
    return from_upper(std::move(m));
  }

  Eigen::Index dim() const noexcept { return data_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }
  const Eigen::MatrixXd& dense() const noexcept { return data_; }
  double trace() const { return data_.trace(); }

 private:
  explicit SymmetricMatrix(Eigen::MatrixXd m) : data_(std::move(m)) {}
  Eigen::MatrixXd data_;
};

/// Symmetrized Nystrom matrix A_ij = sqrt(w_i w_j) h(t_i + t_j).
SymmetricMatrix discretize_hankel(const KernelSpec& spec, const Grid& grid);

/// v_i = sqrt(w_i) f(t_i); Euclidean inner products of projections approximate L^2 ones.
Eigen::VectorXd project_function(const std::function<double(double)>& f, const Grid& grid);

/// sum_i w_i f(t_i).
double quad_integral(const std::function<double(double)>& f, const Grid& grid);

// Binary dump: "HSPC", u32 version, u32 dim, u32 reserved, then the row-major
// upper triangle as little-endian float64.
inline constexpr std::uint32_t kMatrixDumpVersion = 1;
void write_matrix_dump(std::ostream& out, const SymmetricMatrix& m);
SymmetricMatrix read_matrix_dump(std::istream& in);
void write_matrix_dump(const std::string& path, const SymmetricMatrix& m);

}  // namespace helson
