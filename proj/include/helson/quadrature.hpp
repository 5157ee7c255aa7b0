#pragma once

#include <Eigen/Core>

namespace helson {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;    // ascending
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule, n >= 1. Rules are memoized per n.
const GaussRule& gauss_legendre(int n);

}  // namespace helson
