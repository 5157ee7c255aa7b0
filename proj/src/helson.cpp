#include "helson/helson.hpp"

#include <cmath>
#include <string>

#include "helson/errors.hpp"

namespace helson {
namespace {

constexpr double kFactorTailTolerance = 1e-12;

HelsonTruncation make_truncation(double a, int n_min, int N) {
  const Eigen::Index dim = N - n_min + 1;
  Eigen::VectorXd inv_sqrt(dim), log_n(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double n = static_cast<double>(n_min + i);
    inv_sqrt(i) = 1.0 / std::sqrt(n);
    log_n(i) = std::log(n);
  }
  auto m = SymmetricMatrix::generate(dim, [&](Eigen::Index i, Eigen::Index j) {
    return inv_sqrt(i) * inv_sqrt(j) / (a + log_n(i) + log_n(j));
  });
  return {a, n_min, N, std::move(m)};
}

}  // namespace

double helson_symbol(double a, double n) { return 1.0 / (std::sqrt(n) * (a + std::log(n))); }

HelsonTruncation helson_matrix(double a, int N) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw DomainError("helson_matrix: requires a > 0 (use multiplicative_hilbert_matrix for a = 0)");
  if (N < 1) throw ConfigError("helson_matrix: requires N >= 1");
  return make_truncation(a, 1, N);
}

HelsonTruncation multiplicative_hilbert_matrix(int N) {
  if (N < 2) throw DomainError("multiplicative_hilbert_matrix: requires N >= 2");
  return make_truncation(0.0, 2, N);
}

HelsonOperator::HelsonOperator(double a, int n_min, int N) : a_(a) {
  if (n_min != 1 && n_min != 2) throw ConfigError("HelsonOperator: n_min must be 1 or 2");
  if (a < 0.0 || (a == 0.0 && n_min != 2))
    throw ConfigError("HelsonOperator: a = 0 requires n_min = 2, a < 0 not allowed");
  if (N < n_min) throw ConfigError("HelsonOperator: requires N >= n_min");
  const Eigen::Index dim = N - n_min + 1;
  inv_sqrt_.resize(dim);
  log_n_.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double n = static_cast<double>(n_min + i);
    inv_sqrt_(i) = 1.0 / std::sqrt(n);
    log_n_(i) = std::log(n);
  }
}

Eigen::VectorXd HelsonOperator::operator()(const Eigen::VectorXd& x) const {
  const Eigen::Index dim = this->dim();
  const Eigen::VectorXd y = inv_sqrt_.cwiseProduct(x);
  Eigen::VectorXd out(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double base = a_ + log_n_(i);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < dim; ++j) acc += y(j) / (base + log_n_(j));
    out(i) = inv_sqrt_(i) * acc;
  }
  return out;
}

double factor_map_tail_bound(double a, int n_min, double t_max) {
  if (a > 0.0) return std::exp(-a * t_max) / a;
  const double nm = static_cast<double>(n_min) * n_min;
  return std::pow(nm, -0.5 - t_max) / std::log(nm);
}

Eigen::MatrixXd factor_map(double a, int n_min, int N, const Grid& grid) {
  if (n_min != 1 && n_min != 2) throw ConfigError("factor_map: n_min must be 1 or 2");
  if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("factor_map: requires a >= 0");
  if (a == 0.0 && n_min != 2) throw ConfigError("factor_map: a = 0 requires n_min = 2");
  if (N < n_min) throw ConfigError("factor_map: requires N >= n_min");
  const double tail = factor_map_tail_bound(a, n_min, grid.t_max);
  if (!(tail < kFactorTailTolerance))
    throw ConfigError("factor_map: grid.t_max too small, t-integral tail bound " +
                      std::to_string(tail) + " exceeds 1e-12");

  const Eigen::Index rows = N - n_min + 1;
  Eigen::MatrixXd F(rows, grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double t = grid.nodes(j);
    const double sw = std::sqrt(grid.weights(j));
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double log_n = std::log(static_cast<double>(n_min + r));
      F(r, j) = sw * std::exp(-0.5 * a * t - (0.5 + t) * log_n);
    }
  }
  return F;
}

double quadratic_form_exp(double a, const Eigen::VectorXd& x, const Grid& grid, int n_min) {
  if (!(a > 0.0)) throw DomainError("quadratic_form_exp: requires a > 0");
  Eigen::VectorXd log_n(x.size());
  for (Eigen::Index r = 0; r < x.size(); ++r) log_n(r) = std::log(static_cast<double>(n_min + r));
  double acc = 0.0;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double t = grid.nodes(j);
    double f = 0.0;
    for (Eigen::Index r = 0; r < x.size(); ++r) f += x(r) * std::exp(-(0.5 + t) * log_n(r));
    acc += grid.weights(j) * std::exp(-a * t) * f * f;
  }
  if (!std::isfinite(acc)) throw NumericError("quadratic_form_exp: non-finite result");
  return acc;
}

}  // namespace helson
