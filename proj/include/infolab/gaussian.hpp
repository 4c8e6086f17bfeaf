#pragma once

// Gaussian noise: y = rho x + sqrt(1 - rho^2) z. Every set handled here
// depends on x_1 only, so U_rho f reduces to one-dimensional integrals.

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infolab/psi.hpp"
#include "infolab/rng.hpp"

namespace infolab {

struct Interval {
  double lo;  // may be -inf
  double hi;  // may be +inf
};

class GaussianSetSpec {
 public:
  enum class Kind { halfspace, interval_union };

  /// {x : x_1 >= t}.
  static GaussianSetSpec halfspace(double t);
  /// Halfspace of Gaussian measure mu in (0, 1).
  static GaussianSetSpec halfspace_with_measure(double mu);
  /// Disjoint intervals, sorted on construction; touching ends are rejected.
  static GaussianSetSpec interval_union(std::vector<Interval> intervals);

  /// {"kind": "halfspace", "t": t} or
  /// {"kind": "intervals", "intervals": [[lo, hi], ...]} with "-inf"/"inf" allowed.
  static GaussianSetSpec from_json(const std::string& text);
  std::string to_json() const;

  Kind kind() const noexcept { return kind_; }
  double threshold() const noexcept { return intervals_.front().lo; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool contains(double x1) const noexcept;
  /// gamma(set).
  double measure() const;

 private:
  GaussianSetSpec(Kind kind, std::vector<Interval> intervals)
      : kind_(kind), intervals_(std::move(intervals)) {}

  Kind kind_;
  std::vector<Interval> intervals_;
};

/// Union of `pieces` intervals with Gaussian measure mu, random in the
/// probability scale (u = normal_cdf(x)).
GaussianSetSpec random_interval_union(double mu, int pieces, CounterRng& rng);

/// (1 - rho^2)^{-n/2} exp(-(rho^2 |x|^2 - 2 rho <x,y> + rho^2 |y|^2) / (2 (1 - rho^2))).
double mehler_kernel(std::span<const double> x, std::span<const double> y, double rho);
/// Same with +2 rho <x,y>, the sign as first displayed in the source text.
/// Kept only to show that it does not average to 1.
double mehler_kernel_opposite_sign(std::span<const double> x, std::span<const double> y,
                                   double rho);

/// U_rho f(x) from the definition: Pr[rho x_1 + sqrt(1 - rho^2) z in set].
double ou_apply(const GaussianSetSpec& f, double rho, double x1);
/// U_rho f(x) as the integral of the Mehler kernel against the set under gamma.
double ou_apply_kernel(const GaussianSetSpec& f, double rho, double x1, double abs_tol = 1e-12);

/// E_x[-h(U_rho f(x))] by adaptive quadrature over [-10, 10].
double neg_cond_entropy(const GaussianSetSpec& f, double rho, double abs_tol = 1e-11);
/// h(gamma(f)) + neg_cond_entropy.
double gaussian_mi(const GaussianSetSpec& f, double rho);
/// E_x[Psi(U_rho f(x))].
double psi_expectation(const GaussianSetSpec& f, const PsiSpec& psi, double rho,
                       double abs_tol = 1e-11);

struct BorellCheck {
  double value_f = 0.0;
  double value_halfspace = 0.0;
  bool pass = false;
};

/// Psi must be increasing and convex on [0, 1].
BorellCheck borell_check(const GaussianSetSpec& f, const PsiSpec& psi, double rho,
                         double tol = 1e-8);

}  // namespace infolab
