#pragma once

// Functions that depend only on the Hamming weight |x| (number of -1
// coordinates). A fractional level value means that fraction of the level is
// 1; the functionals below then describe the permutation-averaged function.
// By concavity of h its mutual information is a lower bound for every
// Boolean function with the same level counts.

#include <vector>

namespace infolab {

inline constexpr int kMaxSymmetricVars = 2000;

struct SymmetricProfile {
  int n = 0;
  std::vector<double> levels;  // n + 1 entries in [0, 1]

  /// Throws unless 1 <= n <= 2000, levels.size() == n + 1 and entries in [0, 1].
  void validate() const;
  /// E[f] under the uniform measure.
  double mean() const;
};

/// Full levels 0..r set to 1.
SymmetricProfile ball_profile(int n, int r);

struct ExactMeanBall {
  SymmetricProfile profile;
  int boundary_level = 0;      // the level holding the fractional value
  double boundary_fraction = 0.0;
};

/// Hamming ball with mean exactly `mu`: levels filled from 0, the last one
/// partially.
ExactMeanBall exact_mean_ball_profile(int n, double mu);

/// Exact I(f(x); y) in bits for the symmetric function described by `profile`.
/// Cost O(steps * n^2) where steps is the number of level changes.
double symmetric_mi(const SymmetricProfile& profile, double alpha);

/// Pr[f(x) = 1 | |y| = j] for j = 0..n.
std::vector<double> symmetric_conditional(const SymmetricProfile& profile, double alpha);

/// W^1 of the 0/1 function: n fhat({1})^2.
double symmetric_w1(const SymmetricProfile& profile);

/// W^1 of the ball of full levels 0..r: n (Bin(n-1, 1/2) pmf at r / 2)^2.
/// Requires 1 <= r < n <= 2000.
double hamming_ball_w1_exact(int n, int r);

}  // namespace infolab
