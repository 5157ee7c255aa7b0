#include "helson/gridquad.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "helson/errors.hpp"
#include "helson/quadrature.hpp"

namespace helson {

Grid build_grid(double t_min, double t_max, int panels_per_decade, int nodes_per_panel) {
  if (!(t_min > 0.0) || !std::isfinite(t_min))
    throw ConfigError("grid.t_min: must be positive and finite");
  if (!(t_max > t_min) || !std::isfinite(t_max))
    throw ConfigError("grid.t_max: must be finite and greater than t_min");
  if (panels_per_decade < 1) throw ConfigError("grid.panels_per_decade: must be >= 1");
  if (nodes_per_panel < 2) throw ConfigError("grid.nodes_per_panel: must be >= 2");

  const double decades = std::log10(t_max / t_min);
  const int panels =
      std::max(1, static_cast<int>(std::ceil(decades * panels_per_decade - 1e-9)));
  const GaussRule& rule = gauss_legendre(nodes_per_panel);

  Grid g;
  g.t_min = t_min;
  g.t_max = t_max;
  g.panels_per_decade = panels_per_decade;
  g.nodes_per_panel = nodes_per_panel;
  g.panels = panels;
  g.nodes.resize(static_cast<Eigen::Index>(panels) * nodes_per_panel);
  g.weights.resize(g.nodes.size());

  const double log_lo = std::log(t_min);
  const double log_step = std::log(t_max / t_min) / panels;
  double lo = t_min;
  for (int p = 0; p < panels; ++p) {
    const double hi = (p + 1 == panels) ? t_max : std::exp(log_lo + (p + 1) * log_step);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int i = 0; i < nodes_per_panel; ++i) {
      const Eigen::Index idx = static_cast<Eigen::Index>(p) * nodes_per_panel + i;
      g.nodes(idx) = mid + half * rule.nodes(i);
      g.weights(idx) = half * rule.weights(i);
    }
    lo = hi;
  }
  return g;
}

SymmetricMatrix SymmetricMatrix::from_upper(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw ConfigError("SymmetricMatrix: matrix must be square");
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (!std::isfinite(m(i, j))) throw NumericError("SymmetricMatrix: non-finite entry");
      m(j, i) = m(i, j);
    }
    if (!std::isfinite(m(j, j))) throw NumericError("SymmetricMatrix: non-finite entry");
  }
  return SymmetricMatrix(std::move(m));
}

SymmetricMatrix discretize_hankel(const KernelSpec& spec, const Grid& grid) {
  spec.validate();
  const Eigen::VectorXd sw = grid.weights.cwiseSqrt();
  return SymmetricMatrix::generate(grid.size(), [&](Eigen::Index i, Eigen::Index j) {
    return sw(i) * sw(j) * kernel_eval(spec, grid.nodes(i) + grid.nodes(j));
  });
}

Eigen::VectorXd project_function(const std::function<double(double)>& f, const Grid& grid) {
  Eigen::VectorXd v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double fi = f(grid.nodes(i));
    if (!std::isfinite(fi)) throw NumericError("project_function: non-finite sample");
    v(i) = std::sqrt(grid.weights(i)) * fi;
  }
  return v;
}

double quad_integral(const std::function<double(double)>& f, const Grid& grid) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double fi = f(grid.nodes(i));
    if (!std::isfinite(fi)) throw NumericError("quad_integral: non-finite sample");
    acc += grid.weights(i) * fi;
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'H', 'S', 'P', 'C'};

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
    throw NumericError("matrix dump: truncated input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace

void write_matrix_dump(std::ostream& out, const SymmetricMatrix& m) {
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, kMatrixDumpVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.dim()));
  put_le<std::uint32_t>(out, 0);
  for (Eigen::Index i = 0; i < m.dim(); ++i)
    for (Eigen::Index j = i; j < m.dim(); ++j) put_le<double>(out, m(i, j));
  if (!out) throw NumericError("matrix dump: write failed");
}

void write_matrix_dump(const std::string& path, const SymmetricMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("matrix dump: cannot open " + path);
  write_matrix_dump(out, m);
}

SymmetricMatrix read_matrix_dump(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw NumericError("matrix dump: bad magic");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kMatrixDumpVersion) throw NumericError("matrix dump: unsupported version");
  const auto dim = static_cast<Eigen::Index>(get_le<std::uint32_t>(in));
  (void)get_le<std::uint32_t>(in);
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i; j < dim; ++j) m(i, j) = get_le<double>(in);
  return SymmetricMatrix::from_upper(std::move(m));
}

}  // namespace helson
