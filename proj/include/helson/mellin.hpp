#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "helson/gridquad.hpp"

namespace helson {

using ScalarFunction = std::function<double(double)>;

/// Uniform grid in u = log t: `points` samples on [u_min, u_max].
struct MellinSettings {
  double u_min = -14.0;
  double u_max = 14.0;
  int points = 4096;

  double t_min() const;
  double t_max() const;
  double step() const { return (u_max - u_min) / (points - 1); }
};

/// Settings used by multiplier_check: the Carleman image of a test function
/// decays only like t^{-1/2} in both directions, so the log-range is wider.
inline constexpr MellinSettings kMultiplierSettings{-30.0, 30.0, 8192};

/// Mf(1/2 + i tau) sampled on the DFT frequencies of the u-grid.
struct MellinSample {
  Eigen::VectorXd tau;        ///< ascending
  Eigen::VectorXcd values;
  MellinSettings source;
  double tail_mass = 0.0;     ///< fraction of |f|^2 mass in the tapered ends
  std::optional<std::string> warning;
};

/// Mf(1/2 + i tau) = int g(u) e^{i tau u} du with g(u) = e^{u/2} f(e^u).
MellinSample mellin_critical_line(const ScalarFunction& f, const MellinSettings& settings = {});

/// Multiplier of the Carleman operator on the critical line, pi / cosh(pi tau).
double carleman_multiplier(double tau);

/// Relative L^2 difference between M(H f) and carleman_multiplier * M f on |tau| <= 8,
/// where H f is the Nystrom-Carleman operator on `grid` applied to f.
double multiplier_check(const ScalarFunction& f, const Grid& grid,
                        const MellinSettings& settings = kMultiplierSettings);

/// |(1/2pi) int |Mf|^2 dtau - int |f|^2 dt| / int |f|^2 dt.
double plancherel_error(const ScalarFunction& f, const MellinSettings& settings = {});

/// |theta| with theta = (1/pi) log(pi/E - sqrt((pi/E)^2 - 1)), 0 < E <= pi.
double theta_zero(double E);

/// CSV with columns tau,re,im.
void write_mellin_csv(std::ostream& out, const MellinSample& sample);

}  // namespace helson
