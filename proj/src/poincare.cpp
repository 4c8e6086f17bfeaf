#include "infolab/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "infolab/entropy.hpp"
#include "infolab/gaussian.hpp"
#include "infolab/rng.hpp"

namespace infolab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("rho must lie in [0, 1)");
}

void check_ball(std::span<const double> y, const LimitParams& p) {
  if (static_cast<int>(y.size()) != p.n) throw std::invalid_argument("ball point has wrong dimension");
  if (dot(y, y) > p.R * p.R * (1.0 + 1e-12)) throw std::domain_error("ball point outside B^n_R");
}

void check_sphere(std::span<const double> u, int dim, double radius) {
  if (static_cast<int>(u.size()) != dim) throw std::invalid_argument("sphere point has wrong dimension");
  if (std::abs(std::sqrt(dot(u, u)) - radius) > 1e-9 * std::max(1.0, radius)) {
    throw std::domain_error("point is not on the sphere of radius R");
  }
}

// 1 - |y|^2 / R^2, floored at 0.
double slack(std::span<const double> y, const LimitParams& p) {
  return std::max(0.0, 1.0 - dot(y, y) / (p.R * p.R));
}

std::vector<double> sphere_point(int d, double radius, CounterRng& rng) {
  std::vector<double> v(static_cast<std::size_t>(d));
  double len = 0.0;
  do {
    for (double& c : v) c = rng.normal();
    len = std::sqrt(dot(v, v));
  } while (len < 1e-12);
  for (double& c : v) c *= radius / len;
  return v;
}

std::vector<double> ball_point(int d, double radius, CounterRng& rng) {
  auto v = sphere_point(d, 1.0, rng);
  const double scale = radius * std::pow(rng.uniform(), 1.0 / d);
  for (double& c : v) c *= scale;
  return v;
}

struct Moments {
  KahanSum sum;
  KahanSum sum_sq;
  std::uint64_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  McEstimate estimate(double scale) const {
    const double n = static_cast<double>(count);
    const double mean = sum.value() / n;
    const double var = std::max(0.0, sum_sq.value() / n - mean * mean) * n / std::max(1.0, n - 1.0);
    return {scale * mean, scale * std::sqrt(var / n), count};
  }
};

double log_ball_volume(int d, double radius) {
  return 0.5 * d * std::log(std::numbers::pi) + d * std::log(radius) - std::lgamma(0.5 * d + 1.0);
}

}  // namespace

LimitParams LimitParams::make(int N, int n) {
  if (n < 1) throw std::invalid_argument("LimitParams: n must be >= 1");
  if (N < n + 4) throw std::invalid_argument("LimitParams: need N >= n + 4");
  return {N, n, std::sqrt(static_cast<double>(N - n - 3))};
}

double log_unit_sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere area: d must be >= 1");
  return std::log(2.0) + 0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d);
}

double a_factor(std::span<const double> y, std::span<const double> z, double rho,
                const LimitParams& p) {
  check_rho(rho);
  check_ball(y, p);
  check_ball(z, p);
  const double half_b = 0.5 * (1.0 + rho * rho - 2.0 * rho * dot(y, z) / (p.R * p.R));
  double disc = half_b * half_b - rho * rho * slack(y, p) * slack(z, p);
  if (disc < 0.0) {
    if (disc < -1e-12) throw std::domain_error("a_factor: negative discriminant");
    disc = 0.0;
  }
  return half_b + std::sqrt(disc);
}

double r_factor(std::span<const double> y, std::span<const double> z, double rho,
                const LimitParams& p) {
  const double a = a_factor(y, z, rho, p);
  return rho * std::sqrt(slack(y, p) * slack(z, p)) / a;
}

double u_rho_N(std::span<const double> y, std::span<const double> z, double rho,
               const LimitParams& p) {
  const double a = a_factor(y, z, rho, p);
  const double r = rho * std::sqrt(slack(y, p) * slack(z, p)) / a;
  const double log_u = (1.0 - 0.5 * p.n) * std::log1p(-rho * rho) - std::log1p(-r * r) -
                       0.5 * (p.N - p.n) * std::log(a);
  return std::exp(log_u);
}

double q_rho(std::span<const double> u, std::span<const double> v, double rho,
             const LimitParams& p) {
  check_rho(rho);
  check_sphere(u, p.N, p.R);
  check_sphere(v, p.N, p.R);
  double d2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d2 += (u[i] - rho * v[i]) * (u[i] - rho * v[i]);
  const int m = p.N - p.n;
  const double log_q = std::log(p.R) + (1.0 - 0.5 * p.n) * std::log1p(-rho * rho) -
                       log_unit_sphere_area(m) - 0.5 * m * std::log(d2);
  return std::exp(log_q);
}

double poisson_factor(std::span<const double> w, std::span<const double> x, double r, int d,
                      double radius) {
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("poisson_factor: r outside [0, 1)");
  check_sphere(w, d, radius);
  check_sphere(x, d, radius);
  double d2 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) d2 += (w[i] - r * x[i]) * (w[i] - r * x[i]);
  return std::exp(std::log(radius) + std::log1p(-r * r) - log_unit_sphere_area(d) -
                  0.5 * d * std::log(d2));
}

double poisson_factor(std::span<const double> w, std::span<const double> x, double r,
                      const LimitParams& p) {
  return poisson_factor(w, x, r, p.N - p.n, p.R);
}

std::vector<double> compose_point(std::span<const double> y, std::span<const double> w,
                                  const LimitParams& p) {
  check_ball(y, p);
  check_sphere(w, p.N - p.n, p.R);
  std::vector<double> u(y.begin(), y.end());
  const double s = std::sqrt(slack(y, p));
  for (double c : w) u.push_back(s * c);
  return u;
}

McEstimate poisson_factor_mass(int d, double radius, double r, std::uint64_t samples,
                               std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("poisson_factor_mass: d must be >= 2");
  if (!(radius > 0.0)) throw std::domain_error("poisson_factor_mass: radius must be positive");
  if (samples < 2) throw std::invalid_argument("poisson_factor_mass: need at least 2 samples");
  std::vector<double> w(static_cast<std::size_t>(d), 0.0);
  w[0] = radius;
  Moments m;
  for (std::uint64_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    const auto x = sphere_point(d, radius, rng);
    m.add(poisson_factor(w, x, r, d, radius));
  }
  const double area = std::exp(log_unit_sphere_area(d) + (d - 1) * std::log(radius));
  return m.estimate(area);
}

DecompositionCheck decomposition_integral_check(TestFunction g, const LimitParams& p,
                                                SliceExponent exponent,
                                                std::uint64_t samples, std::uint64_t seed) {
  if (p.N > 10) throw std::invalid_argument("decomposition_integral_check: N must be <= 10");
  if (samples < 2) throw std::invalid_argument("decomposition_integral_check: need at least 2 samples");
  const auto eval = [g](std::span<const double> u) {
    return g == TestFunction::one ? 1.0 : u[0] * u[0];
  };
  const double e = exponent == SliceExponent::stated ? 0.5 * (p.N - p.n - 3) : 0.5 * (p.N - p.n - 2);
  const int m = p.N - p.n;

  Moments lhs;
  Moments rhs;
  for (std::uint64_t i = 0; i < samples; ++i) {
    CounterRng a(seed, 2 * i);
    lhs.add(eval(sphere_point(p.N, p.R, a)));
    CounterRng b(seed, 2 * i + 1);
    const auto y = ball_point(p.n, p.R, b);
    const auto w = sphere_point(m, p.R, b);
    const auto u = compose_point(y, w, p);
    rhs.add(eval(u) * std::pow(slack(y, p), e));
  }
  const double lhs_scale = std::exp(log_unit_sphere_area(p.N) + (p.N - 1) * std::log(p.R));
  const double rhs_scale =
      std::exp(log_ball_volume(p.n, p.R) + log_unit_sphere_area(m) + (m - 1) * std::log(p.R));
  const auto l = lhs.estimate(lhs_scale);
  const auto r = rhs.estimate(rhs_scale);

  DecompositionCheck c;
  c.lhs = l.mean;
  c.lhs_sigma = l.sigma;
  c.rhs = r.mean;
  c.rhs_sigma = r.sigma;
  c.ratio = l.mean / r.mean;
  c.ratio_sigma = std::abs(c.ratio) * std::hypot(l.sigma / l.mean, r.sigma / r.mean);
  return c;
}

std::vector<LimitRow> mehler_limit_table(std::span<const double> y, std::span<const double> z,
                                         double rho, const std::vector<int>& Ns) {
  const double ref = mehler_kernel(y, z, rho);
  std::vector<LimitRow> rows;
  for (int N : Ns) {
    const auto p = LimitParams::make(N, static_cast<int>(y.size()));
    const double v = u_rho_N(y, z, rho, p);
    rows.push_back({N, v, ref, std::abs(v - ref), std::abs(v - ref) / ref});
  }
  return rows;
}

std::vector<LimitRow> a_power_limit_table(std::span<const double> y, std::span<const double> z,
                                          double rho, const std::vector<int>& Ns) {
  const double x = rho * rho * (dot(y, y) + dot(z, z)) - 2.0 * rho * dot(y, z);
  const double ref = std::exp(-x / (2.0 * (1.0 - rho * rho)));
  std::vector<LimitRow> rows;
  for (int N : Ns) {
    const auto p = LimitParams::make(N, static_cast<int>(y.size()));
    const double v = std::exp(-0.5 * (N - p.n) * std::log(a_factor(y, z, rho, p)));
    rows.push_back({N, v, ref, std::abs(v - ref), std::abs(v - ref) / ref});
  }
  return rows;
}

ABoundCheck a_bound_check(const LimitParams& p, std::uint64_t samples, std::uint64_t seed,
                          double tol) {
  ABoundCheck c;
  c.samples = samples;
  c.worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    const auto y = ball_point(p.n, p.R, rng);
    const auto z = ball_point(p.n, p.R, rng);
    const double rho = rng.uniform();
    const double a = a_factor(y, z, rho, p);
    const double lhs = std::sqrt(slack(y, p) * slack(z, p));
    const double gap = lhs - a;
    c.worst = std::max(c.worst, gap);
    if (gap > tol) ++c.violations;
    if (rho > 0.0) c.max_r_over_rho = std::max(c.max_r_over_rho, lhs / a);
  }
  return c;
}

FactorCheck factor_kernel_check(const LimitParams& p, std::uint64_t samples, std::uint64_t seed) {
  FactorCheck c;
  c.samples = samples;
  const int m = p.N - p.n;
  for (std::uint64_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    const auto y = ball_point(p.n, p.R, rng);
    const auto z = ball_point(p.n, p.R, rng);
    const auto w = sphere_point(m, p.R, rng);
    const auto x = sphere_point(m, p.R, rng);
    const double rho = 0.05 + 0.9 * rng.uniform();
    const auto u = compose_point(y, w, p);
    const auto v = compose_point(z, x, p);
    const double q = q_rho(u, v, rho, p);
    const double r = r_factor(y, z, rho, p);
    const double prod = u_rho_N(y, z, rho, p) * poisson_factor(w, x, r, p);
    c.max_rel_err = std::max(c.max_rel_err, std::abs(q - prod) / q);
  }
  return c;
}

}  // namespace infolab
