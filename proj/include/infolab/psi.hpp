#pragma once

#include <string>
#include <vector>

namespace infolab {

/// A convex function Psi applied to smoothed values in the functionals
/// J(f) = int Psi(Kf) dm and E[Psi(U_rho f)].
class PsiSpec {
 public:
  enum class Kind { neg_binary_entropy, square, abs_power, custom_table };

  static PsiSpec neg_binary_entropy();
  static PsiSpec square();
  /// |x|^p, p >= 1.
  static PsiSpec abs_power(double p);
  /// Piecewise-linear interpolation of `values` on a uniform grid over [0,1].
  /// Throws std::invalid_argument unless the table is convex.
  static PsiSpec custom_table(std::vector<double> values);

  /// Parses "neg-entropy", "square", "abs-power:<p>".
  static PsiSpec parse(const std::string& name);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  std::string name() const;

  /// neg_binary_entropy and custom_table accept [0,1] widened by 1e-9 (clamped)
  /// and throw std::domain_error beyond it.
  double operator()(double x) const;

  /// Non-decreasing on [0, inf) (the class Borell's inequality covers).
  bool is_increasing() const;

 private:
  PsiSpec(Kind kind, double exponent, std::vector<double> table)
      : kind_(kind), exponent_(exponent), table_(std::move(table)) {}

  Kind kind_;
  double exponent_;
  std::vector<double> table_;
};

}  // namespace infolab
