#pragma once

#include <functional>
#include <span>
#include <vector>

namespace infolab {

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b], refined until the
/// error estimate is below abs_tol (or the depth limit is hit).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-11);

/// Same, split at the given interior breakpoints (sorted, out-of-range ones ignored).
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, double abs_tol = 1e-11);

/// Gauss-Hermite rule for the standard normal weight:
/// sum_i weights[i] g(nodes[i]) ~= E[g(Z)], Z ~ N(0,1).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

HermiteRule gauss_hermite(int order);

}  // namespace infolab
