#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace infolab {

/// Compensated (Kahan-Babuska) accumulator.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  KahanSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Binary entropy in bits, h(0) = h(1) = 0. Throws std::domain_error outside [0,1].
double binary_entropy(double beta);

/// Same as binary_entropy but first clamps values within `tol` of [0,1].
double binary_entropy_clamped(double beta, double tol = 1e-9);

/// Phi(t) = 1 - h(1/2 - t/2) on [-1,1].
double phi(double t);

/// Jensen gap sum_i w_i Phi(v_i) - Phi(sum_i w_i v_i).
/// Weights must sum to 1 within 1e-12 and values must lie in [-1,1].
double phi_entropy(std::span<const double> values, std::span<const double> weights);

/// Uniform-weight variant of phi_entropy.
double phi_entropy(std::span<const double> values);

double normal_pdf(double z);
double normal_cdf(double z);
/// Upper tail 1 - normal_cdf(z), accurate for large z.
double normal_ccdf(double z);
/// Inverse of normal_cdf on (0,1); rational start plus one Halley step.
double normal_quantile(double p);
/// Pr[lo <= Z <= hi] for standard normal Z; either end may be infinite.
double normal_interval(double lo, double hi);

/// Gaussian isoperimetric profile U(mu) = pdf(quantile(mu)).
double gaussian_isoperimetric(double mu);

/// Published quartic bound for unbiased f, valid for alpha in [(1 - 1/sqrt 3)/2, 1/2].
double osw_bound(double alpha);
double osw_lower_alpha();

/// (1 - 2 alpha)^2.
double erkip_bound(double alpha);

/// log C(n, k) via lgamma.
double log_choose(int n, int k);

/// Bin(n, p) pmf, entries 0..n, evaluated in log space.
std::vector<double> binomial_pmf(int n, double p);

/// alpha^w (1 - alpha)^(n - w) for w = 0..n: the probability of one specific
/// flip pattern of weight w.
std::vector<double> flip_pattern_probabilities(int n, double alpha);

/// rho = 1 - 2 alpha.
constexpr double flip_to_correlation(double alpha) noexcept { return 1.0 - 2.0 * alpha; }
constexpr double correlation_to_flip(double rho) noexcept { return (1.0 - rho) / 2.0; }

}  // namespace infolab
