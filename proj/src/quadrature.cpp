#include "psdo/quadrature.hpp"

#include "psdo/error.hpp"

#include <cmath>
#include <numbers>

namespace psdo {

QuadratureRule gauss_legendre(int count, double a, double b) {
  if (count < 1) throw Error(Errc::invalid_params, "quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(count));
  rule.weights.resize(static_cast<std::size_t>(count));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (count + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton on P_count starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = count == 1 ? 1.0 : count * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(count - 1 - i);
    rule.nodes[lo] = mid - half * x;
    rule.nodes[hi] = mid + half * x;
    rule.weights[lo] = half * w;
    rule.weights[hi] = half * w;
  }
  if (count % 2 == 1) rule.nodes[static_cast<std::size_t>(count / 2)] = mid;
  return rule;
}

QuadratureRule periodic_trapezoid(int count) {
  if (count < 1) throw Error(Errc::invalid_params, "quadrature needs at least one node");
  QuadratureRule rule;
  for (int k = 0; k < count; ++k) {
    rule.nodes.push_back(2.0 * std::numbers::pi * k / count);
    rule.weights.push_back(1.0 / count);
  }
  return rule;
}

}  // namespace psdo
