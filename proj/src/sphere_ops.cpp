#include "infolab/sphere_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "infolab/entropy.hpp"
#include "infolab/rng.hpp"

namespace infolab {

namespace {

constexpr std::size_t kMaxDensePoints = 8192;

std::vector<std::size_t> pole_order(const SpherePointSet& set) {
  const auto angle = set.polar_angles();
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });
  return order;
}

double weighted_psi_sum(const PsiSpec& psi, const SpherePointSet& set,
                        std::span<const double> kf) {
  const auto w = set.weights();
  KahanSum s;
  for (std::size_t i = 0; i < kf.size(); ++i) s += w[i] * psi(kf[i]);
  return s.value();
}

}  // namespace

SphericalField rearrange(const SphericalField& f) {
  const auto& set = f.set();
  if (!set.uniform_weights()) throw std::invalid_argument("rearrange: weights must be uniform");
  std::vector<double> sorted(f.values().begin(), f.values().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto order = pole_order(set);
  std::vector<double> out(f.size());
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = sorted[r];
  return SphericalField(f.set_ptr(), std::move(out));
}

SphericalField polarize(const SphericalField& f, std::size_t index) {
  const auto& refl = f.set().reflections();
  if (index >= refl.size()) throw std::out_of_range("polarize: reflection not supported by the point set");
  const auto& s = refl[index];
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double a = f[i];
    const double b = f[s.image[i]];
    out[i] = s.side[i] > 0 ? std::max(a, b) : (s.side[i] < 0 ? std::min(a, b) : a);
  }
  return SphericalField(f.set_ptr(), std::move(out));
}

// --- kernel operator -------------------------------------------------------

KernelOperator::KernelOperator(PointSetPtr set, const KernelSpec& kernel, double scale)
    : set_(std::move(set)) {
  const std::size_t m = set_->size();
  if (m > kMaxDensePoints) throw std::length_error("kernel operator: more than 8192 points");
  matrix_.resize(m * m);
  const auto w = set_->weights();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      matrix_[i * m + j] = scale * w[j] * kernel(set_->normalized_inner(i, j));
    }
  }
}

std::vector<double> KernelOperator::apply(std::span<const double> values, Execution exec) const {
  std::vector<double> out(set_->size());
  kernels::matvec(matrix_, values, out, exec);
  return out;
}

SphericalField KernelOperator::apply(const SphericalField& f, Execution exec) const {
  if (f.set_ptr() != set_) throw std::invalid_argument("kernel operator: field on a different point set");
  return SphericalField(set_, apply(f.values(), exec));
}

std::vector<double> KernelOperator::row_mass() const {
  const std::vector<double> ones(set_->size(), 1.0);
  return apply(ones);
}

SphericalField kernel_apply(const KernelSpec& kernel, const SphericalField& f, Execution exec) {
  const KernelOperator op(f.set_ptr(), kernel);
  return op.apply(f, exec);
}

double functional_J(const PsiSpec& psi, const KernelOperator& op, const SphericalField& f,
                    Execution exec) {
  const auto kf = op.apply(f.values(), exec);
  return weighted_psi_sum(psi, f.set(), kf);
}

double functional_J(const PsiSpec& psi, const KernelSpec& kernel, const SphericalField& f,
                    Execution exec) {
  const KernelOperator op(f.set_ptr(), kernel);
  return functional_J(psi, op, f, exec);
}

PolarizationCheck polarization_inequality_check(const SphericalField& f, std::size_t index,
                                                const KernelOperator& op, const PsiSpec& psi,
                                                double tol) {
  const auto g = polarize(f, index);
  const auto kf = op.apply(f.values());
  const auto kg = op.apply(g.values());
  PolarizationCheck c;
  c.j_before = weighted_psi_sum(psi, f.set(), kf);
  c.j_after = weighted_psi_sum(psi, f.set(), kg);
  c.pass = c.j_after >= c.j_before - tol;

  const auto& s = f.set().reflections()[index];
  for (std::size_t i = 0; i < kf.size(); ++i) {
    const std::size_t j = s.image[i];
    c.sum_equal_error = std::max(c.sum_equal_error, std::abs(kf[i] + kf[j] - kg[i] - kg[j]));
    c.diff_bigger_deficit =
        std::max(c.diff_bigger_deficit, std::abs(kf[i] - kf[j]) - std::abs(kg[i] - kg[j]));
  }
  c.lemmas_pass = c.sum_equal_error <= tol && c.diff_bigger_deficit <= tol;
  return c;
}

double l1_distance(const SphericalField& f, const SphericalField& g) {
  if (f.set_ptr() != g.set_ptr()) throw std::invalid_argument("l1_distance: different point sets");
  const auto w = f.set().weights();
  KahanSum s;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * std::abs(f[i] - g[i]);
  return s.value();
}

PolarizationTrace iterate_polarizations(const SphericalField& f, std::uint64_t seed, int steps,
                                        const KernelOperator* op, const PsiSpec* psi) {
  if (steps < 0) throw std::invalid_argument("iterate_polarizations: negative step count");
  const auto count = f.set().reflections().size();
  if (count == 0) throw std::invalid_argument("iterate_polarizations: no supported reflections");
  const auto target = rearrange(f);
  const bool track_j = op != nullptr && psi != nullptr;

  PolarizationTrace t{f, {}, {}, {}};
  t.l1_to_rearranged.push_back(l1_distance(f, target));
  if (track_j) t.j_values.push_back(functional_J(*psi, *op, f));
  CounterRng rng(seed);
  for (int step = 0; step < steps; ++step) {
    const auto idx = static_cast<std::size_t>(rng.below(count));
    t.final_field = polarize(t.final_field, idx);
    t.reflections.push_back(idx);
    t.l1_to_rearranged.push_back(l1_distance(t.final_field, target));
    if (track_j) t.j_values.push_back(functional_J(*psi, *op, t.final_field));
  }
  return t;
}

double spherical_mi(const SphericalField& f, double rho, Execution exec) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("spherical_mi: rho outside [0, 1)");
  for (double v : f.values()) {
    if (v != 0.0 && v != 1.0) throw std::domain_error("spherical_mi: field must be 0/1");
  }
  const auto& set = f.set();
  const double total = set.total_weight();
  const KernelOperator op(f.set_ptr(), KernelSpec::poisson(rho, set.dim()));
  const auto pf = op.apply(f.values(), exec);
  const auto w = set.weights();
  KahanSum cond;
  for (std::size_t i = 0; i < pf.size(); ++i) {
    cond += (w[i] / total) * binary_entropy_clamped(pf[i] / total);
  }
  return binary_entropy(std::clamp(f.mean(), 0.0, 1.0)) - cond.value();
}

SphericalField cap_indicator(PointSetPtr set, std::size_t m) {
  if (m > set->size()) throw std::out_of_range("cap_indicator: more points than the set holds");
  std::vector<double> v(set->size(), 0.0);
  const auto order = pole_order(*set);
  for (std::size_t r = 0; r < m; ++r) v[order[r]] = 1.0;
  return SphericalField(std::move(set), std::move(v));
}

std::string field_to_json(const SphericalField& f) {
  const auto& set = f.set();
  nlohmann::json j;
  j["n"] = set.dim();
  j["R"] = set.radius();
  if (set.grid_size()) {
    j["M"] = *set.grid_size();
  } else {
    j["M"] = set.size();
    auto pts = nlohmann::json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
      const auto p = set.point(i);
      pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    j["points"] = std::move(pts);
  }
  j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  return j.dump();
}

}  // namespace infolab
