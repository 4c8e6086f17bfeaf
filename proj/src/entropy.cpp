#include "infolab/entropy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace infolab {

namespace {

// Lower-half quantile, p in (0, 0.5].
double quantile_lower(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  // Halley refinement; x <= 0 here so the erfc-based cdf keeps full relative accuracy.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

[[noreturn]] void domain(const char* what, double v) {
  throw std::domain_error(std::string(what) + ": argument " + std::to_string(v) +
                          " outside domain");
}

}  // namespace

double binary_entropy(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) domain("binary_entropy", beta);
  if (beta == 0.0 || beta == 1.0) return 0.0;
  // log1p keeps the (1 - beta) term accurate for small beta.
  const double one_minus = 1.0 - beta;
  return -(beta * std::log2(beta)) -
         one_minus * std::log1p(-beta) / std::numbers::ln2;
}

double binary_entropy_clamped(double beta, double tol) {
  if (beta < 0.0 && beta >= -tol) beta = 0.0;
  if (beta > 1.0 && beta <= 1.0 + tol) beta = 1.0;
  return binary_entropy(beta);
}

double phi(double t) {
  if (!(t >= -1.0 && t <= 1.0)) domain("phi", t);
  // 1 - h(1/2 - t/2) = ((1+t) log2(1+t) + (1-t) log2(1-t)) / 2
  const double plus = 1.0 + t;
  const double minus = 1.0 - t;
  const double a = plus > 0.0 ? plus * std::log1p(t) / std::numbers::ln2 : 0.0;
  const double b = minus > 0.0 ? minus * std::log1p(-t) / std::numbers::ln2 : 0.0;
  return 0.5 * (a + b);
}

double phi_entropy(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("phi_entropy: values and weights differ in length");
  }
  KahanSum wsum;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("phi_entropy: negative weight");
    wsum += w;
  }
  if (std::abs(wsum.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("phi_entropy: weights do not sum to 1");
  }
  KahanSum mean;
  KahanSum expect;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = values[i];
    if (v > 1.0 && v <= 1.0 + 1e-12) v = 1.0;
    if (v < -1.0 && v >= -1.0 - 1e-12) v = -1.0;
    if (!(v >= -1.0 && v <= 1.0)) domain("phi_entropy", v);
    mean += weights[i] * v;
    expect += weights[i] * phi(v);
  }
  double m = mean.value();
  if (m > 1.0) m = 1.0;
  if (m < -1.0) m = -1.0;
  return expect.value() - phi(m);
}

double phi_entropy(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("phi_entropy: empty input");
  KahanSum mean;
  KahanSum expect;
  const double w = 1.0 / static_cast<double>(values.size());
  for (double v : values) {
    if (v > 1.0 && v <= 1.0 + 1e-12) v = 1.0;
    if (v < -1.0 && v >= -1.0 - 1e-12) v = -1.0;
    if (!(v >= -1.0 && v <= 1.0)) domain("phi_entropy", v);
    mean += v;
    expect += phi(v);
  }
  double m = mean.value() * w;
  if (m > 1.0) m = 1.0;
  if (m < -1.0) m = -1.0;
  return expect.value() * w - phi(m);
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_ccdf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) domain("normal_quantile", p);
  if (p <= 0.5) return quantile_lower(p);
  return -quantile_lower(1.0 - p);
}

double normal_interval(double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  // Work in whichever tail keeps both terms small.
  if (lo > 0.0) return normal_ccdf(lo) - normal_ccdf(hi);
  return normal_cdf(hi) - normal_cdf(lo);
}

double gaussian_isoperimetric(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) domain("gaussian_isoperimetric", mu);
  return normal_pdf(normal_quantile(mu));
}

double osw_lower_alpha() { return 0.5 * (1.0 - 1.0 / std::sqrt(3.0)); }

double osw_bound(double alpha) {
  if (!(alpha >= osw_lower_alpha() - 1e-15 && alpha <= 0.5)) domain("osw_bound", alpha);
  const double rho2 = (1.0 - 2.0 * alpha) * (1.0 - 2.0 * alpha);
  const double half_log_e = 0.5 * std::numbers::log2e;
  return half_log_e * rho2 + 9.0 * (1.0 - half_log_e) * rho2 * rho2;
}

double erkip_bound(double alpha) {
  const double rho = 1.0 - 2.0 * alpha;
  return rho * rho;
}

double log_choose(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::vector<double> binomial_pmf(int n, double p) {
  if (n < 0) throw std::domain_error("binomial_pmf: negative n");
  if (!(p >= 0.0 && p <= 1.0)) domain("binomial_pmf", p);
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (p == 0.0) {
    pmf.front() = 1.0;
    return pmf;
  }
  if (p == 1.0) {
    pmf.back() = 1.0;
    return pmf;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (int k = 0; k <= n; ++k) pmf[k] = std::exp(log_choose(n, k) + k * lp + (n - k) * lq);
  return pmf;
}

std::vector<double> flip_pattern_probabilities(int n, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) domain("flip_pattern_probabilities", alpha);
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  if (alpha == 0.0) {
    w.front() = 1.0;
    return w;
  }
  if (alpha == 1.0) {
    w.back() = 1.0;
    return w;
  }
  const double la = std::log(alpha);
  const double lb = std::log1p(-alpha);
  for (int k = 0; k <= n; ++k) w[k] = std::exp(k * la + (n - k) * lb);
  return w;
}

}  // namespace infolab
