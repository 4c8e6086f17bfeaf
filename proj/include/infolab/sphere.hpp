#pragma once

// Discretized spheres S^{n-1}_R with reflection structure.
//
// Two constructions:
//  * circle_grid(M): M equally spaced points on S^1, closed under the M - 1
//    reflections whose axes sit at angles pi l / M. Images and sides are
//    computed from integer arithmetic, so lemma-level identities hold up to
//    summation rounding only.
//  * sphere_sample(n, M, seed): M/2 uniform points and their mirror images
//    under one hyperplane; only that reflection is supported.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infolab/kernels.hpp"

namespace infolab {

/// Hyperplane through the origin with unit normal v, oriented so the pole
/// lies in H+ = {x : <x, v> > 0}. sigma(x) = x - 2 <x, v> v.
class Reflection {
 public:
  /// Normalizes `normal` and flips it toward `pole`. Throws if the
  /// hyperplane passes within 1e-9 of the pole direction.
  Reflection(std::vector<double> normal, std::span<const double> pole);

  std::span<const double> normal() const noexcept { return v_; }
  std::vector<double> apply(std::span<const double> x) const;
  /// <x, v>.
  double offset(std::span<const double> x) const;

 private:
  std::vector<double> v_;
};

/// A reflection the point set is closed under, with the permutation it induces.
struct SupportedReflection {
  Reflection reflection;
  std::vector<std::size_t> image;  // index of sigma(p_i)
  std::vector<int> side;           // +1 in H+, -1 in H-, 0 on the hyperplane
};

class SpherePointSet {
 public:
  int dim() const noexcept { return n_; }
  double radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  std::span<const double> weights() const noexcept { return weights_; }
  double total_weight() const;
  std::span<const double> pole() const noexcept { return pole_; }
  /// Polar angle of every point (exact multiples of 2 pi / M on the grid).
  std::span<const double> polar_angles() const noexcept { return polar_; }
  const std::vector<SupportedReflection>& reflections() const noexcept { return reflections_; }

  /// M for circle_grid(M), empty for sampled sets.
  std::optional<int> grid_size() const noexcept { return grid_; }
  /// <p_i, p_j> / R^2. On the grid this depends only on the circular
  /// distance, so mirrored pairs get bit-identical values.
  double normalized_inner(std::size_t i, std::size_t j) const;

  bool uniform_weights() const;

  /// Adds a reflection if the set is closed under it (1e-9 on positions,
  /// weights preserved). Returns its index.
  std::size_t close_under(const Reflection& r);

  friend std::shared_ptr<const SpherePointSet> circle_grid(int m);
  friend std::shared_ptr<const SpherePointSet> sphere_sample(int n, int m, std::uint64_t seed,
                                                             std::optional<std::vector<double>> normal);

 private:
  SpherePointSet() = default;

  int n_ = 0;
  double radius_ = 1.0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  std::vector<double> pole_;
  std::vector<double> polar_;
  std::vector<SupportedReflection> reflections_;
  std::optional<int> grid_;
  std::vector<double> grid_cos_;  // cos(2 pi d / M), d = 0..M/2
};

using PointSetPtr = std::shared_ptr<const SpherePointSet>;

/// M even, M >= 8. Reflection index l - 1 holds the axis at angle pi l / M.
PointSetPtr circle_grid(int m);

/// Uniform points on S^{n-1} (R = 1) paired under one reflection. If `normal`
/// is absent a seeded random normal is used. n >= 2, M even.
PointSetPtr sphere_sample(int n, int m, std::uint64_t seed,
                          std::optional<std::vector<double>> normal = std::nullopt);

/// Real values on a point set.
class SphericalField {
 public:
  SphericalField(PointSetPtr set, std::vector<double> values);

  const SpherePointSet& set() const noexcept { return *set_; }
  const PointSetPtr& set_ptr() const noexcept { return set_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// sum_i w_i f_i.
  double integral() const;
  /// integral / total weight.
  double mean() const;

 private:
  PointSetPtr set_;
  std::vector<double> values_;
};

/// Kernels K(c) of the normalized inner product c = <x, y> / R^2.
class KernelSpec {
 public:
  enum class Kind { poisson, step, custom_table };

  /// (1 - rho^2) / (1 - 2 rho c + rho^2)^{n/2}; 0 <= rho < 1.
  static KernelSpec poisson(double rho, int n);
  /// 1 if c >= threshold, else 0.
  static KernelSpec step(double threshold);
  /// Piecewise linear on a uniform grid over [-1, 1]; must be non-decreasing.
  static KernelSpec custom_table(std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double rho() const noexcept { return a_; }
  double operator()(double c) const;

 private:
  KernelSpec(Kind kind, double a, int n, std::vector<double> table)
      : kind_(kind), a_(a), n_(n), table_(std::move(table)) {}

  Kind kind_;
  double a_;
  int n_;
  std::vector<double> table_;
};

/// Spherical cap measure omega(C(theta)) on S^{n-1}, n >= 2.
double cap_measure(int n, double theta);

}  // namespace infolab
