#include "infolab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "infolab/entropy.hpp"
#include "infolab/quadrature.hpp"
#include "infolab/rng.hpp"

namespace infolab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

// --- Reflection ------------------------------------------------------------

Reflection::Reflection(std::vector<double> normal, std::span<const double> pole)
    : v_(std::move(normal)) {
  if (v_.size() != pole.size()) throw std::invalid_argument("reflection: dimension mismatch");
  const double len = std::sqrt(dot(v_, v_));
  if (!(len > 0.0)) throw std::invalid_argument("reflection: zero normal");
  for (double& c : v_) c /= len;
  const double pole_norm = std::sqrt(dot(pole, pole));
  const double side = dot(v_, pole) / pole_norm;
  if (std::abs(side) <= 1e-9) throw std::invalid_argument("reflection: hyperplane contains the pole");
  if (side < 0.0) {
    for (double& c : v_) c = -c;
  }
}

std::vector<double> Reflection::apply(std::span<const double> x) const {
  if (x.size() != v_.size()) throw std::invalid_argument("reflection: dimension mismatch");
  const double t = 2.0 * dot(x, v_);
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t * v_[i];
  return out;
}

double Reflection::offset(std::span<const double> x) const { return dot(x, v_); }

// --- SpherePointSet --------------------------------------------------------

double SpherePointSet::total_weight() const {
  KahanSum s;
  for (double w : weights_) s += w;
  return s.value();
}

double SpherePointSet::normalized_inner(std::size_t i, std::size_t j) const {
  if (grid_) {
    const auto m = static_cast<std::size_t>(*grid_);
    const std::size_t d = i > j ? i - j : j - i;
    return grid_cos_[std::min(d, m - d)];
  }
  return dot(point(i), point(j)) / (radius_ * radius_);
}

bool SpherePointSet::uniform_weights() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double w) { return w == weights_.front(); });
}

std::size_t SpherePointSet::close_under(const Reflection& r) {
  const std::size_t m = size();
  SupportedReflection s{r, std::vector<std::size_t>(m), std::vector<int>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const auto img = r.apply(point(i));
    std::size_t best = m;
    double best_d = 1e-9;
    for (std::size_t j = 0; j < m; ++j) {
      double d2 = 0.0;
      const auto pj = point(j);
      for (int c = 0; c < n_; ++c) d2 += (img[c] - pj[c]) * (img[c] - pj[c]);
      const double d = std::sqrt(d2);
      if (d <= best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == m || weights_[best] != weights_[i]) {
      throw std::invalid_argument("point set is not closed under the reflection");
    }
    s.image[i] = best;
    const double off = r.offset(point(i));
    s.side[i] = std::abs(off) <= 1e-12 ? 0 : (off > 0.0 ? 1 : -1);
  }
  reflections_.push_back(std::move(s));
  return reflections_.size() - 1;
}

PointSetPtr circle_grid(int m) {
  if (m < 8 || m % 2 != 0) throw std::invalid_argument("circle_grid: M must be even and >= 8");
  auto set = std::shared_ptr<SpherePointSet>(new SpherePointSet());
  set->n_ = 2;
  set->radius_ = 1.0;
  set->grid_ = m;
  set->pole_ = {1.0, 0.0};
  const auto um = static_cast<std::size_t>(m);
  set->coords_.resize(2 * um);
  set->weights_.assign(um, 1.0 / m);
  set->polar_.resize(um);
  for (std::size_t j = 0; j < um; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / m;
    set->coords_[2 * j] = std::cos(theta);
    set->coords_[2 * j + 1] = std::sin(theta);
    set->polar_[j] = 2.0 * std::numbers::pi * static_cast<double>(std::min(j, um - j)) / m;
  }
  set->grid_cos_.resize(um / 2 + 1);
  for (std::size_t d = 0; d <= um / 2; ++d) {
    set->grid_cos_[d] = std::cos(2.0 * std::numbers::pi * static_cast<double>(d) / m);
  }
  // Axis at phi = pi l / M maps theta_j to theta_{l - j}; the side of point j
  // is the sign of sin(pi (l - 2j) / M).
  for (int l = 1; l < m; ++l) {
    const double phi = std::numbers::pi * l / m;
    Reflection r({std::sin(phi), -std::cos(phi)}, set->pole_);
    SupportedReflection s{std::move(r), std::vector<std::size_t>(um), std::vector<int>(um)};
    for (int j = 0; j < m; ++j) {
      s.image[j] = static_cast<std::size_t>(((l - j) % m + m) % m);
      const int k = ((l - 2 * j) % (2 * m) + 2 * m) % (2 * m);
      s.side[j] = (k == 0 || k == m) ? 0 : (k < m ? 1 : -1);
    }
    set->reflections_.push_back(std::move(s));
  }
  return set;
}

PointSetPtr sphere_sample(int n, int m, std::uint64_t seed, std::optional<std::vector<double>> normal) {
  if (n < 2) throw std::invalid_argument("sphere_sample: n must be >= 2");
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("sphere_sample: M must be even and >= 2");
  auto set = std::shared_ptr<SpherePointSet>(new SpherePointSet());
  set->n_ = n;
  set->radius_ = 1.0;
  set->pole_.assign(static_cast<std::size_t>(n), 0.0);
  set->pole_[0] = 1.0;

  std::vector<double> v;
  if (normal) {
    v = *normal;
  } else {
    CounterRng rng(seed, ~std::uint64_t{0});
    v.resize(static_cast<std::size_t>(n));
    do {
      for (double& c : v) c = rng.normal();
    } while (std::abs(v[0]) < 1e-3 * std::sqrt(dot(v, v)));
  }
  Reflection r(std::move(v), set->pole_);

  const auto half = static_cast<std::size_t>(m / 2);
  const auto un = static_cast<std::size_t>(n);
  set->coords_.resize(static_cast<std::size_t>(m) * un);
  set->weights_.assign(static_cast<std::size_t>(m), 1.0 / m);
  for (std::size_t i = 0; i < half; ++i) {
    CounterRng rng(seed, i);
    std::vector<double> p(un);
    double len = 0.0;
    do {
      for (double& c : p) c = rng.normal();
      len = std::sqrt(dot(p, p));
    } while (len < 1e-12);
    for (double& c : p) c /= len;
    const auto q = r.apply(p);
    std::copy(p.begin(), p.end(), set->coords_.begin() + static_cast<std::ptrdiff_t>(i * un));
    std::copy(q.begin(), q.end(), set->coords_.begin() + static_cast<std::ptrdiff_t>((i + half) * un));
  }
  set->polar_.resize(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < set->polar_.size(); ++i) {
    set->polar_[i] = std::acos(std::clamp(set->point(i)[0], -1.0, 1.0));
  }

  SupportedReflection s{r, std::vector<std::size_t>(static_cast<std::size_t>(m)),
                        std::vector<int>(static_cast<std::size_t>(m))};
  for (std::size_t i = 0; i < half; ++i) {
    s.image[i] = i + half;
    s.image[i + half] = i;
    const double off = r.offset(set->point(i));
    const int side = std::abs(off) <= 1e-12 ? 0 : (off > 0.0 ? 1 : -1);
    s.side[i] = side;
    s.side[i + half] = -side;
  }
  set->reflections_.push_back(std::move(s));
  return set;
}

// --- SphericalField --------------------------------------------------------

SphericalField::SphericalField(PointSetPtr set, std::vector<double> values)
    : set_(std::move(set)), values_(std::move(values)) {
  if (!set_) throw std::invalid_argument("spherical field: null point set");
  if (values_.size() != set_->size()) {
    throw std::invalid_argument("spherical field: one value per point required");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::domain_error("spherical field: non-finite value");
  }
}

double SphericalField::integral() const {
  KahanSum s;
  const auto w = set_->weights();
  for (std::size_t i = 0; i < values_.size(); ++i) s += w[i] * values_[i];
  return s.value();
}

double SphericalField::mean() const { return integral() / set_->total_weight(); }

// --- KernelSpec ------------------------------------------------------------

KernelSpec KernelSpec::poisson(double rho, int n) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("Poisson kernel requires 0 <= rho < 1");
  if (n < 2) throw std::invalid_argument("Poisson kernel requires n >= 2");
  return KernelSpec(Kind::poisson, rho, n, {});
}

KernelSpec KernelSpec::step(double threshold) { return KernelSpec(Kind::step, threshold, 0, {}); }

KernelSpec KernelSpec::custom_table(std::vector<double> values) {
  if (values.size() < 2) throw std::invalid_argument("kernel table needs at least two entries");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) throw std::invalid_argument("kernel table must be non-decreasing");
  }
  return KernelSpec(Kind::custom_table, 0.0, 0, std::move(values));
}

double KernelSpec::operator()(double c) const {
  switch (kind_) {
    case Kind::poisson: {
      // |x - rho y|^2 / R^2 = 1 - 2 rho c + rho^2 >= (1 - rho)^2 > 0.
      const double d2 = std::max(1.0 - 2.0 * a_ * c + a_ * a_, (1.0 - a_) * (1.0 - a_));
      return (1.0 - a_ * a_) / std::pow(d2, 0.5 * n_);
    }
    case Kind::step:
      return c >= a_ ? 1.0 : 0.0;
    case Kind::custom_table: {
      const double t = (std::clamp(c, -1.0, 1.0) + 1.0) / 2.0 * static_cast<double>(table_.size() - 1);
      const auto i = std::min(static_cast<std::size_t>(t), table_.size() - 2);
      const double frac = t - static_cast<double>(i);
      return table_[i] + frac * (table_[i + 1] - table_[i]);
    }
  }
  return 0.0;
}

double cap_measure(int n, double theta) {
  if (n < 2) throw std::invalid_argument("cap_measure: n must be >= 2");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::domain_error("cap_measure: theta outside [0, pi]");
  const int p = n - 2;
  const auto density = [p](double t) { return std::pow(std::sin(t), p); };
  const double num = integrate(density, 0.0, theta, 1e-13);
  const double den = integrate(density, 0.0, std::numbers::pi, 1e-13);
  return std::clamp(num / den, 0.0, 1.0);
}

}  // namespace infolab
