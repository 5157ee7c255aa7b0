#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "helson/errors.hpp"
#include "helson/mellin.hpp"
#include "helson/specialfn.hpp"

using namespace helson;
using std::numbers::pi;

namespace {
double log_gaussian(double t) {
  const double l = std::log(t);
  return std::exp(-l * l);
}
const MellinSettings kExpSettings{-45.0, 5.0, 4096};
}  // namespace

TEST_SUITE("mellin") {
  TEST_CASE("transform of e^{-t} at the centre is Gamma(1/2)") {
    const MellinSample s = mellin_critical_line([](double t) { return std::exp(-t); }, kExpSettings);
    Eigen::Index centre = 0;
    s.tau.cwiseAbs().minCoeff(&centre);
    CHECK(s.tau(centre) == 0.0);
    const double gamma_half = std::exp(log_gamma_complex(0.5).real());
    CHECK(std::abs(s.values(centre) - gamma_half) <= 1e-8);
    CHECK(std::abs(gamma_half - std::sqrt(pi)) <= 1e-14);
    CHECK_FALSE(s.warning);
  }

  TEST_CASE("log-Gaussian against its closed form") {
    const MellinSample s = mellin_critical_line(log_gaussian);
    CHECK(s.tau.size() == 4096);
    for (Eigen::Index r = 1; r < s.tau.size(); ++r) REQUIRE(s.tau(r) > s.tau(r - 1));
    double worst = 0.0;
    for (Eigen::Index r = 0; r < s.tau.size(); ++r) {
      if (std::abs(s.tau(r)) > 8.0) continue;
      const std::complex<double> z(0.5, s.tau(r));
      worst = std::max(worst, std::abs(s.values(r) - std::sqrt(pi) * std::exp(z * z / 4.0)));
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("linearity") {
    auto f = [](double t) { return std::exp(-t); };
    const MellinSample a = mellin_critical_line(f, kExpSettings);
    const MellinSample b = mellin_critical_line(log_gaussian, kExpSettings);
    const MellinSample c =
        mellin_critical_line([&](double t) { return 2.0 * f(t) - 3.0 * log_gaussian(t); }, kExpSettings);
    CHECK((c.values - (2.0 * a.values - 3.0 * b.values)).cwiseAbs().maxCoeff() <= 1e-13);
  }

  TEST_CASE("Plancherel") {
    CHECK(plancherel_error([](double t) { return std::exp(-t); }, kExpSettings) <= 1e-6);
    CHECK(plancherel_error(log_gaussian) <= 1e-8);
    CHECK(plancherel_error([](double) { return 0.0; }) == 0.0);
  }

  TEST_CASE("truncation warning and bad samples") {
    const MellinSample s = mellin_critical_line([](double t) { return std::exp(-t); });
    CHECK(s.warning);
    CHECK(s.tail_mass > 1e-8);
    CHECK_THROWS_AS(mellin_critical_line([](double) { return std::nan(""); }), NumericError);
    CHECK_THROWS_AS(mellin_critical_line(log_gaussian, {1.0, 0.0, 64}), ConfigError);
  }

  TEST_CASE("Carleman multiplier") {
    CHECK(carleman_multiplier(0.0) == pi);
    CHECK(carleman_multiplier(1.0) == doctest::Approx(0.27101).epsilon(1e-4));
    for (double tau = -8.0; tau <= 8.0; tau += 0.125) {
      CHECK(carleman_multiplier(tau) == carleman_multiplier(-tau));
      CHECK(carleman_multiplier(tau) == lambda_of_k(std::abs(tau)));
    }
  }

  TEST_CASE("multiplier check") {
    const Grid g = build_grid(kReferenceGrid);
    const double ref = multiplier_check(log_gaussian, g);
    CHECK(ref <= 1e-3);
    const double coarse = multiplier_check(log_gaussian, build_grid(1e-12, 1e12, 2, 8), {-20.0, 20.0, 2048});
    CHECK(ref < coarse);
    CHECK(multiplier_check([](double) { return 0.0; }, g) == 0.0);
  }

  TEST_CASE("zeros of the symbol") {
    CHECK(theta_zero(pi) == 0.0);
    CHECK(std::abs(theta_zero(pi / std::cosh(pi)) - 1.0) <= 1e-10);
    for (double k = 0.01; k <= 3.0; k += 0.01) CHECK(std::abs(theta_zero(lambda_of_k(k)) - k) <= 1e-10);
    for (double e = 0.1; e < 3.1; e += 0.1) CHECK(std::abs(theta_zero(e) - k_of_lambda(e)) <= 1e-12);
    CHECK(theta_zero(1.0) > theta_zero(2.0));
    CHECK_THROWS_AS(theta_zero(0.0), DomainError);
    CHECK_THROWS_AS(theta_zero(3.2), DomainError);
  }

  TEST_CASE("CSV export") {
    const MellinSample s = mellin_critical_line(log_gaussian, {-10.0, 10.0, 32});
    std::ostringstream out;
    write_mellin_csv(out, s);
    const std::string text = out.str();
    CHECK(text.rfind("tau,re,im\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 33);
  }
}
