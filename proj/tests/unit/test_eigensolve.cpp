#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "helson/eigensolve.hpp"
#include "helson/helson.hpp"

using namespace helson;

namespace {

Eigen::MatrixXd random_symmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) m(i, j) = m(j, i) = u(rng);
  return m;
}

// Number of eigenvalues below sigma: negative pivots of the LDL^T of A - sigma I.
int sturm_count(const Eigen::MatrixXd& a, double sigma) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd m = a - sigma * Eigen::MatrixXd::Identity(n, n);
  int negative = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double p = m(k, k);
    if (p < 0.0) ++negative;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = m(i, k) / p;
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return negative;
}

}  // namespace

TEST_SUITE("eigensolve") {
  TEST_CASE("dense decomposition invariants") {
    const Eigen::MatrixXd a = random_symmetric(40, 7);
    const EigenResult r = eigen_full(a, true);
    REQUIRE(r.vectors);
    const Eigen::MatrixXd& v = *r.vectors;
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(40, 40)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(*r.residual_max <= 1e-12);
    CHECK(std::abs(r.values.sum() - a.trace()) <= 1e-12 * a.cwiseAbs().sum());
    CHECK(std::abs(r.values.squaredNorm() - a.squaredNorm()) <= 1e-12 * a.squaredNorm());
    for (Eigen::Index i = 1; i < r.values.size(); ++i) CHECK(r.values(i) >= r.values(i - 1));
  }

  TEST_CASE("Sturm counts bracket every eigenvalue") {
    for (unsigned seed = 1; seed <= 20; ++seed) {
      const int n = 2 + static_cast<int>(seed * 3 % 63);
      const Eigen::MatrixXd a = random_symmetric(n, seed);
      const Eigen::VectorXd v = eigen_full(a).values;
      for (int i = 0; i < n; ++i) {
        const double delta = 1e-9 * std::max(1.0, std::abs(v(i)));
        CAPTURE(seed);
        CAPTURE(i);
        CHECK(sturm_count(a, v(i) - delta) <= i);
        CHECK(sturm_count(a, v(i) + delta) >= i + 1);
      }
    }
  }

  TEST_CASE("dimension cap") {
    CHECK_THROWS_AS(eigen_full(Eigen::MatrixXd::Zero(4097, 4097)), ConfigError);
    CHECK_THROWS_AS(eigen_full(Eigen::MatrixXd::Zero(3, 4)), ConfigError);
  }

  TEST_CASE("Lanczos on a diagonal matrix") {
    const Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(100, 1.0, 100.0);
    const Eigen::MatrixXd a = d.asDiagonal();
    const EigenResult r = top_eigenpairs(a, 2);
    CHECK(r.values(0) == doctest::Approx(99.0).epsilon(1e-12));
    CHECK(r.values(1) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(*r.residual_max <= 1e-10);
  }

  TEST_CASE("Lanczos agrees with the dense solver") {
    for (double a : {0.1, 1.0}) {
      const HelsonTruncation h = helson_matrix(a, 256);
      const Eigen::VectorXd dense = eigen_full(h.matrix).values;
      const Eigen::VectorXd top = top_eigenpairs(h.matrix, 3).values;
      CHECK((top - dense.tail(3)).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK(top(2) <= dense(dense.size() - 1) + 1e-10);
    }
    const Eigen::MatrixXd r = random_symmetric(60, 3);
    CHECK((top_eigenpairs(r, 5).values - eigen_full(r).values.tail(5)).cwiseAbs().maxCoeff() <= 1e-9);
  }

  TEST_CASE("matrix-free Lanczos") {
    const HelsonOperator op(0.2, 1, 300);
    const EigenResult r = top_eigenpairs([&](const Eigen::VectorXd& x) { return op(x); }, op.dim(), 1);
    CHECK(r.values(0) == doctest::Approx(eigen_full(helson_matrix(0.2, 300).matrix).values(299)).epsilon(1e-10));
  }

  TEST_CASE("non-convergence reports best estimates") {
    const Eigen::MatrixXd a = random_symmetric(300, 11);
    LanczosOptions opts;
    opts.max_restarts = 0;
    opts.basis = 6;
    opts.tol = 1e-15;
    try {
      top_eigenpairs(a, 2, opts);
      FAIL("expected IterationError");
    } catch (const IterationError& e) {
      CHECK(e.best_estimates().size() == 2);
    }
  }

  TEST_CASE("count_above is strict") {
    const double pi = std::numbers::pi;
    const std::vector<double> v{pi, pi};
    CHECK(count_above(v, pi) == 0);
    const std::vector<double> w{1.0, 3.5, 4.0};
    CHECK(count_above(w, pi) == 2);
    CHECK(count_above(Eigen::VectorXd::Constant(3, 5.0), 4.0) == 3);
  }
}
