#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infolab/kernels.hpp"
#include "infolab/psi.hpp"
#include "infolab/sphere.hpp"

namespace infolab {

/// Values sorted in decreasing order placed on points sorted by increasing
/// polar angle (ties by point index). Requires uniform weights.
SphericalField rearrange(const SphericalField& f);

/// Two-point symmetrization across supported reflection `index`: the larger
/// value goes to the H+ point. Points on the hyperplane keep their value.
SphericalField polarize(const SphericalField& f, std::size_t index);

/// Dense operator (Kf)_i = sum_j w_j K(c_ij) f_j on one point set.
class KernelOperator {
 public:
  /// `scale` multiplies every kernel value. Dense storage: at most 8192 points.
  KernelOperator(PointSetPtr set, const KernelSpec& kernel, double scale = 1.0);

  const SpherePointSet& set() const noexcept { return *set_; }
  std::vector<double> apply(std::span<const double> values,
                            Execution exec = Execution::serial) const;
  SphericalField apply(const SphericalField& f, Execution exec = Execution::serial) const;
  /// (K 1)_i for every i.
  std::vector<double> row_mass() const;

 private:
  PointSetPtr set_;
  std::vector<double> matrix_;  // row-major, weights folded in
};

SphericalField kernel_apply(const KernelSpec& kernel, const SphericalField& f,
                            Execution exec = Execution::serial);

/// J(f) = sum_i w_i Psi((Kf)_i).
double functional_J(const PsiSpec& psi, const KernelOperator& op, const SphericalField& f,
                    Execution exec = Execution::serial);
double functional_J(const PsiSpec& psi, const KernelSpec& kernel, const SphericalField& f,
                    Execution exec = Execution::serial);

struct PolarizationCheck {
  double j_before = 0.0;
  double j_after = 0.0;
  bool pass = false;                // j_after >= j_before - tol
  double sum_equal_error = 0.0;     // max |Kf(x) + Kf(sx) - Kf^s(x) - Kf^s(sx)|
  double diff_bigger_deficit = 0.0; // max (|Kf(x) - Kf(sx)| - |Kf^s(x) - Kf^s(sx)|), floored at 0
  bool lemmas_pass = false;
};

PolarizationCheck polarization_inequality_check(const SphericalField& f, std::size_t index,
                                                const KernelOperator& op, const PsiSpec& psi,
                                                double tol = 1e-10);

struct PolarizationTrace {
  SphericalField final_field;
  std::vector<std::size_t> reflections;  // index used at each step
  std::vector<double> l1_to_rearranged;  // entry 0 is the starting distance
  std::vector<double> j_values;          // empty unless an operator is given
};

/// T steps, each polarizing across a supported reflection drawn from `seed`.
PolarizationTrace iterate_polarizations(const SphericalField& f, std::uint64_t seed, int steps,
                                        const KernelOperator* op = nullptr,
                                        const PsiSpec* psi = nullptr);

/// sum_i w_i |f_i - g_i|.
double l1_distance(const SphericalField& f, const SphericalField& g);

/// h(mean f) - sum_i w_i h((P_rho f)_i) for a 0/1 field, weights normalized to 1.
double spherical_mi(const SphericalField& f, double rho, Execution exec = Execution::serial);

/// Indicator of the m points nearest the pole (in rearrangement order).
SphericalField cap_indicator(PointSetPtr set, std::size_t m);

/// {"n", "R", "M"?, "points"?, "values"}; points omitted for grids.
std::string field_to_json(const SphericalField& f);

}  // namespace infolab
