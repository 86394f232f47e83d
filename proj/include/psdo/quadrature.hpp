#pragma once

#include <vector>

namespace psdo {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `count` nodes on [a, b], nodes ascending.
QuadratureRule gauss_legendre(int count, double a = -1.0, double b = 1.0);

/// Periodic trapezoid rule on [0, 2pi): nodes 2 pi k / count, weights
/// 1/count, so the rule computes the average over the circle.
QuadratureRule periodic_trapezoid(int count);

}  // namespace psdo
