#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helson/eigensolve.hpp"
#include "helson/errors.hpp"
#include "helson/helson.hpp"

using namespace helson;
using std::numbers::pi;

TEST_SUITE("helson") {
  TEST_CASE("entries") {
    const HelsonTruncation h = helson_matrix(0.5, 20);
    CHECK(h.matrix.dim() == 20);
    CHECK(h.entry(1, 1) == 2.0);
    CHECK(h.entry(2, 3) == doctest::Approx(1.0 / (std::sqrt(6.0) * (0.5 + std::log(6.0)))).epsilon(1e-15));
    CHECK((h.matrix.dense().array() > 0.0).all());
    CHECK(helson_symbol(0.5, 6.0) == doctest::Approx(h.entry(2, 3)).epsilon(1e-15));

    const HelsonTruncation m = multiplicative_hilbert_matrix(30);
    CHECK(m.matrix.dim() == 29);
    CHECK(m.n_min == 2);
    CHECK(m.entry(2, 2) == doctest::Approx(1.0 / (2.0 * std::log(4.0))).epsilon(1e-15));
  }

  TEST_CASE("argument errors") {
    CHECK_THROWS_AS(helson_matrix(0.0, 10), DomainError);
    CHECK_THROWS_AS(helson_matrix(-1.0, 10), DomainError);
    CHECK_THROWS_AS(helson_matrix(1.0, 0), ConfigError);
    CHECK_THROWS_AS(multiplicative_hilbert_matrix(1), DomainError);
  }

  TEST_CASE("Gram structure: non-negative spectrum") {
    for (double a : {0.05, 0.5, 2.0}) {
      const HelsonTruncation h = helson_matrix(a, 128);
      CHECK(eigen_full(h.matrix).values(0) >= -1e-12 * h.matrix.trace());
    }
    const HelsonTruncation m = multiplicative_hilbert_matrix(256);
    CHECK(eigen_full(m.matrix).values(0) >= -1e-12 * m.matrix.trace());
  }

  TEST_CASE("nested truncations and the eigenvalue above pi") {
    for (double a : {0.1, 0.5, 2.0}) {
      double prev = 0.0;
      for (int n : {16, 64, 256}) {
        const Eigen::VectorXd v = eigen_full(helson_matrix(a, n).matrix).values;
        const double top = v(v.size() - 1);
        CHECK(top >= prev);
        CHECK(top >= 1.0 / a - 1e-10);
        CHECK(top <= pi + 1.0 / a + 1e-8);
        CHECK(v(v.size() - 2) <= pi + 1e-8);
        if (a >= 2.0) CHECK(top <= pi + 1e-8);
        prev = top;
      }
    }
  }

  TEST_CASE("entries decrease in a") {
    CHECK((helson_matrix(0.3, 40).matrix.dense().array() >= helson_matrix(0.6, 40).matrix.dense().array()).all());
  }

  TEST_CASE("matrix-free operator matches the dense truncation") {
    const HelsonOperator op(0.4, 1, 100);
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(100, -1.0, 2.0);
    CHECK((op(x) - helson_matrix(0.4, 100).matrix.dense() * x).norm() <= 1e-13 * x.norm());
    const HelsonOperator op0(0.0, 2, 50);
    const Eigen::VectorXd y = Eigen::VectorXd::Ones(49);
    CHECK((op0(y) - multiplicative_hilbert_matrix(50).matrix.dense() * y).norm() <= 1e-13);
    CHECK_THROWS_AS(HelsonOperator(0.0, 1, 10), ConfigError);
  }

  TEST_CASE("factor map reproduces the Helson matrix") {
    const Grid g = build_grid(kReferenceGrid);
    const Eigen::MatrixXd F = factor_map(1.0, 1, 64, g);
    const Eigen::MatrixXd M = helson_matrix(1.0, 64).matrix.dense();
    CHECK((F * F.transpose() - M).cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::MatrixXd F0 = factor_map(0.0, 2, 64, g);
    const Eigen::MatrixXd M0 = multiplicative_hilbert_matrix(64).matrix.dense();
    CHECK((F0 * F0.transpose() - M0).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("factor map nonzero spectra coincide") {
    const Grid g = build_grid(1e-8, 1e8, 3, 12);
    const Eigen::MatrixXd F = factor_map(1.0, 1, 40, g);
    const Eigen::VectorXd a = eigen_full(F * F.transpose()).values;
    const Eigen::VectorXd b = eigen_full(F.transpose() * F).values;
    CHECK((a.tail(10) - b.tail(10)).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("factor map tail check") {
    const Grid short_grid = build_grid(1e-6, 10.0, 4, 16);
    CHECK_THROWS_AS(factor_map(1.0, 1, 10, short_grid), ConfigError);
    CHECK_THROWS_AS(factor_map(0.0, 1, 10, build_grid(kReferenceGrid)), ConfigError);
    CHECK(factor_map_tail_bound(1.0, 1, 30.0) == doctest::Approx(std::exp(-30.0)));
    CHECK(factor_map_tail_bound(0.0, 2, 20.0) == doctest::Approx(std::pow(4.0, -20.5) / std::log(4.0)));
  }

  TEST_CASE("quadratic form") {
    const Grid g = build_grid(kReferenceGrid);
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(8);
    e1(0) = 1.0;
    CHECK(quadratic_form_exp(0.5, e1, g) == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(quadratic_form_exp(2.0, e1, g) == doctest::Approx(0.5).epsilon(1e-11));
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(8, 1.0, -1.0);
    const double direct = x.dot(helson_matrix(0.7, 8).matrix.dense() * x);
    CHECK(quadratic_form_exp(0.7, x, g) == doctest::Approx(direct).epsilon(1e-10));
    CHECK_THROWS_AS(quadratic_form_exp(0.0, x, g), DomainError);
  }
}
