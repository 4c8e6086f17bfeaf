#include "infolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace infolab {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  double err = 0.0;
  const double value = Rule::integrate(f, a, b, 0, 0.0, &err);
  if (err <= tol || depth >= 40 || (b - a) <= 1e-14 * (std::abs(a) + std::abs(b))) {
    return value;
  }
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1) + adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (!(b > a)) return 0.0;
  return adapt(f, a, b, abs_tol, 0);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, double abs_tol) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double piece_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += adapt(f, cuts[i], cuts[i + 1], piece_tol, 0);
  }
  return total;
}

HermiteRule gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be positive");
  const int n = order;
  // Nodes are the eigenvalues of the Jacobi matrix of the probabilists' Hermite
  // recurrence (zero diagonal, off-diagonal sqrt(k)). Sturm counts bracket each
  // one, so no initial guesses are needed.
  const auto count_below = [n](double lambda) {
    int count = 0;
    double d = -lambda;
    if (d < 0) ++count;
    for (int k = 1; k < n; ++k) {
      if (d == 0.0) d = 1e-300;
      d = -lambda - static_cast<double>(k) / d;
      if (d < 0) ++count;
    }
    return count;
  };
  const double bound = 2.0 * std::sqrt(static_cast<double>(n));
  HermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double lo = -bound, hi = bound;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(mid) > i) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double x = 0.5 * (lo + hi);
    // Christoffel weight 1 / sum_j q_j(x)^2 with orthonormal q_j.
    double q0 = 1.0, q1 = x, s = 1.0;
    for (int k = 1; k < n; ++k) {
      s += q1 * q1;
      const double q2 = (x * q1 - std::sqrt(static_cast<double>(k)) * q0) / std::sqrt(k + 1.0);
      q0 = q1;
      q1 = q2;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / s;
  }
  // Symmetrize to remove bisection round-off.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace infolab
