#pragma once

// The big-sphere kernels whose limit is the Mehler kernel.
//
// A point of S^{N-1}_R is written u = (y, (1 - |y|^2/R^2)^{1/2} w) with
// y in the ball B^n_R and w in S^{N-n-1}_R; R = sqrt(N - n - 3).

#include <cstdint>
#include <span>
#include <vector>

namespace infolab {

struct LimitParams {
  int N = 0;
  int n = 0;
  double R = 0.0;

  /// Requires N >= n + 4, n >= 1.
  static LimitParams make(int N, int n);
};

/// log |S^{d-1}| for the unit sphere in R^d: log(2 pi^{d/2} / Gamma(d/2)).
double log_unit_sphere_area(int d);

double a_factor(std::span<const double> y, std::span<const double> z, double rho,
                const LimitParams& p);
double r_factor(std::span<const double> y, std::span<const double> z, double rho,
                const LimitParams& p);
/// (1 - rho^2)^{1 - n/2} / ((1 - r^2) A^{(N-n)/2}).
double u_rho_N(std::span<const double> y, std::span<const double> z, double rho,
               const LimitParams& p);
/// R (1 - rho^2)^{1 - n/2} / (|S^{N-n-1}| |u - rho v|^{N-n}), u, v on S^{N-1}_R.
double q_rho(std::span<const double> u, std::span<const double> v, double rho,
             const LimitParams& p);
/// R (1 - r^2) / (|S^{N-n-1}| |w - r x|^{N-n}), w, x on S^{N-n-1}_R.
double poisson_factor(std::span<const double> w, std::span<const double> x, double r,
                      const LimitParams& p);
/// Same factor for an explicit small-sphere dimension d (sphere S^{d-1}_R).
double poisson_factor(std::span<const double> w, std::span<const double> x, double r, int d,
                      double radius);

/// (y, (1 - |y|^2/R^2)^{1/2} w).
std::vector<double> compose_point(std::span<const double> y, std::span<const double> w,
                                  const LimitParams& p);

struct McEstimate {
  double mean = 0.0;
  double sigma = 0.0;  // standard error of the mean
  std::uint64_t samples = 0;
};

/// Integral of the Poisson factor over x in S^{d-1}_R against surface measure,
/// as R^{d-1} |S^{d-1}| E_x[factor]. Should be 1.
McEstimate poisson_factor_mass(int d, double radius, double r, std::uint64_t samples,
                               std::uint64_t seed);

enum class SliceExponent {
  stated,  // (N - n - 3) / 2
  slice,   // (N - n - 2) / 2, the surface-measure Jacobian
};

enum class TestFunction { one, u1_squared };

struct DecompositionCheck {
  double lhs = 0.0;        // integral over S^{N-1}_R of g ds
  double lhs_sigma = 0.0;
  double rhs = 0.0;        // ball x small-sphere integral with the weight
  double rhs_sigma = 0.0;
  double ratio = 0.0;      // lhs / rhs
  double ratio_sigma = 0.0;
};

/// Monte Carlo evaluation of both sides of the sphere-slicing identity.
DecompositionCheck decomposition_integral_check(TestFunction g, const LimitParams& p,
                                                SliceExponent exponent,
                                                std::uint64_t samples, std::uint64_t seed);

struct LimitRow {
  int N = 0;
  double value = 0.0;
  double reference = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
};

/// u_rho_N(y, z) against the Mehler kernel for each N.
std::vector<LimitRow> mehler_limit_table(std::span<const double> y, std::span<const double> z,
                                         double rho, const std::vector<int>& Ns);

/// A^{-(N-n)/2} against exp(-(rho^2(|y|^2+|z|^2) - 2 rho <y,z>) / (2 (1 - rho^2))).
std::vector<LimitRow> a_power_limit_table(std::span<const double> y, std::span<const double> z,
                                          double rho, const std::vector<int>& Ns);

struct ABoundCheck {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;  // beyond tol
  double worst = 0.0;            // max of lhs - A
  double max_r_over_rho = 0.0;
};

/// Random y, z uniform in B^n_R and rho uniform in [0, 1).
ABoundCheck a_bound_check(const LimitParams& p, std::uint64_t samples, std::uint64_t seed,
                          double tol = 1e-12);

struct FactorCheck {
  std::uint64_t samples = 0;
  double max_rel_err = 0.0;
};

/// q_rho(u, v) against u_rho_N(y, z) * poisson_factor(w, x, r) on random
/// decompositions; rho uniform in [0.05, 0.95].
FactorCheck factor_kernel_check(const LimitParams& p, std::uint64_t samples, std::uint64_t seed);

}  // namespace infolab
