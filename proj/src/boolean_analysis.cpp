#include "infolab/boolean_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "infolab/entropy.hpp"

namespace infolab {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("flip probability must lie in [0, 1]");
  }
}

// Entropy in bits of an unnormalized histogram restricted to `support`.
double histogram_entropy(const std::vector<double>& hist, const std::vector<std::uint32_t>& support) {
  KahanSum total;
  for (auto v : support) total += hist[v];
  const double t = total.value();
  KahanSum acc;
  for (auto v : support) {
    const double p = hist[v] / t;
    if (p > 0.0) acc += -p * std::log2(p);
  }
  return acc.value();
}

BooleanFunction finish(BooleanFunction indicator, ValueConvention conv) {
  if (conv == ValueConvention::zero_one) return indicator;
  return indicator.complement().with_convention(ValueConvention::plus_minus);
}

}  // namespace

// --- transforms ------------------------------------------------------------

FourierSpectrum fwht(int n, std::span<const double> values, Execution exec) {
  if (n < 1 || n > kMaxTransformVars) throw std::out_of_range("fwht: n outside [1, 24]");
  if (values.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("fwht: table length must be 2^n");
  }
  std::vector<double> a(values.begin(), values.end());
  kernels::fwht(a, exec);
  const double scale = std::ldexp(1.0, -n);
  for (double& c : a) c *= scale;
  return FourierSpectrum(n, std::move(a));
}

FourierSpectrum fwht(const BooleanFunction& f, Execution exec) {
  const auto v = f.values();
  return fwht(f.num_vars(), v, exec);
}

std::vector<double> fwht_inverse(const FourierSpectrum& spec, Execution exec) {
  std::vector<double> a(spec.coeffs().begin(), spec.coeffs().end());
  kernels::fwht(a, exec);
  return a;
}

std::vector<double> noise_operator(const FourierSpectrum& spec, double rho, Execution exec) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw std::domain_error("noise_operator: |rho| > 1");
  const int n = spec.num_vars();
  std::vector<double> powers(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) powers[k] = powers[k - 1] * rho;
  std::vector<double> a(spec.coeffs().begin(), spec.coeffs().end());
  for (std::size_t s = 0; s < a.size(); ++s) a[s] *= powers[std::popcount(s)];
  kernels::fwht(a, exec);
  return a;
}

double degree_weight(const FourierSpectrum& spec, int k) {
  if (k < 0 || k > spec.num_vars()) throw std::out_of_range("degree_weight: level outside [0, n]");
  KahanSum acc;
  for (std::size_t s = 0; s < spec.size(); ++s) {
    if (std::popcount(s) == k) acc += spec[s] * spec[s];
  }
  return acc.value();
}

double variance_trho(const FourierSpectrum& spec, double rho) {
  const int n = spec.num_vars();
  std::vector<double> powers(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) powers[k] = powers[k - 1] * rho * rho;
  KahanSum acc;
  for (std::size_t s = 1; s < spec.size(); ++s) acc += powers[std::popcount(s)] * spec[s] * spec[s];
  return acc.value();
}

// --- mutual information ----------------------------------------------------

double mutual_information_direct(const BooleanFunction& f, double alpha, Execution exec) {
  check_alpha(alpha);
  const auto g = f.with_convention(ValueConvention::zero_one);
  const auto spec = fwht(g, exec);
  const auto p = noise_operator(spec, flip_to_correlation(alpha), exec);
  const double mu = g.density();
  const double scale = std::ldexp(1.0, -f.num_vars());
  const double cond = kernels::chunked_sum(
      p.size(), [&](std::size_t y) { return binary_entropy_clamped(p[y]); }, exec);
  return binary_entropy(mu) - scale * cond;
}

double output_entropy(const MultiOutputFunction& f) {
  std::vector<double> hist(std::size_t{1} << f.num_outputs(), 0.0);
  std::vector<std::uint32_t> support;
  for (auto v : f.table()) {
    if (hist[v] == 0.0) support.push_back(v);
    hist[v] += 1.0;
  }
  return histogram_entropy(hist, support);
}

double mutual_information_direct(const MultiOutputFunction& f, double alpha, Execution exec) {
  check_alpha(alpha);
  const int n = f.num_vars();
  if (n > 15) throw std::out_of_range("generic mutual information requires n <= 15");
  const auto weight = flip_pattern_probabilities(n, alpha);
  const std::size_t size = f.size();
  const std::size_t bins = std::size_t{1} << f.num_outputs();
  const auto table = f.table();

  const double cond = kernels::chunked_sum(
      size,
      [&](std::size_t y) {
        thread_local std::vector<double> hist;
        thread_local std::vector<std::uint32_t> support;
        hist.assign(bins, 0.0);
        support.clear();
        for (std::size_t x = 0; x < size; ++x) {
          const double w = weight[std::popcount(x ^ y)];
          if (w == 0.0) continue;
          const auto v = table[x];
          if (hist[v] == 0.0) support.push_back(v);
          hist[v] += w;
        }
        return histogram_entropy(hist, support);
      },
      exec, 64);
  return output_entropy(f) - std::ldexp(cond, -n);
}

double mutual_information_phi(const BooleanFunction& f, double rho, Execution exec) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw std::domain_error("mutual_information_phi: |rho| > 1");
  const auto spec = fwht(f.with_convention(ValueConvention::plus_minus), exec);
  auto t = noise_operator(spec, rho, exec);
  for (double& v : t) v = std::clamp(v, -1.0, 1.0);
  return phi_entropy(t);
}

// --- families --------------------------------------------------------------

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::dictator: return "dictator";
    case FamilyKind::and_k: return "and";
    case FamilyKind::lex: return "lex";
    case FamilyKind::hamming_ball: return "ball";
    case FamilyKind::majority: return "majority";
  }
  return "?";
}

FamilyKind parse_family(const std::string& text) {
  if (text == "dictator") return FamilyKind::dictator;
  if (text == "and") return FamilyKind::and_k;
  if (text == "lex") return FamilyKind::lex;
  if (text == "ball") return FamilyKind::hamming_ball;
  if (text == "majority") return FamilyKind::majority;
  throw std::invalid_argument("unknown family '" + text + "'");
}

BooleanFunction make_family(const FamilyParams& p) {
  switch (p.kind) {
    case FamilyKind::dictator: return dictator(p.n, static_cast<int>(p.param), p.conv);
    case FamilyKind::and_k: return and_k(p.n, static_cast<int>(p.param), p.conv);
    case FamilyKind::lex: return lex(p.n, p.param, p.conv);
    case FamilyKind::hamming_ball: return hamming_ball(p.n, p.param, p.conv);
    case FamilyKind::majority: return majority(p.n, p.conv);
  }
  throw std::invalid_argument("unknown family");
}

BooleanFunction dictator(int n, int i, ValueConvention conv) {
  if (i < 1 || i > n) throw std::out_of_range("dictator: coordinate outside [1, n]");
  BooleanFunction g(n);
  for (std::size_t x = 0; x < g.size(); ++x) g.set_bit(x, coordinate_sign(x, n, i) > 0);
  return finish(std::move(g), conv);
}

BooleanFunction and_k(int n, int k, ValueConvention conv) {
  if (k < 1 || k > n) throw std::out_of_range("and_k: k outside [1, n]");
  BooleanFunction g(n);
  const std::size_t block = std::size_t{1} << (n - k);
  for (std::size_t x = 0; x < block; ++x) g.set_bit(x, true);
  return finish(std::move(g), conv);
}

BooleanFunction lex(int n, long long count, ValueConvention conv) {
  BooleanFunction g(n);
  if (count < 0 || static_cast<std::size_t>(count) > g.size()) {
    throw std::out_of_range("lex: count outside [0, 2^n]");
  }
  for (std::size_t x = 0; x < static_cast<std::size_t>(count); ++x) g.set_bit(x, true);
  return finish(std::move(g), conv);
}

BooleanFunction hamming_ball(int n, long long ones_count, ValueConvention conv) {
  BooleanFunction g(n);
  if (ones_count < 0 || static_cast<std::size_t>(ones_count) > g.size()) {
    throw std::out_of_range("hamming_ball: ones_count outside [0, 2^n]");
  }
  auto remaining = static_cast<std::size_t>(ones_count);
  for (int w = 0; w <= n && remaining > 0; ++w) {
    for (std::size_t x = 0; x < g.size() && remaining > 0; ++x) {
      if (std::popcount(x) == w) {
        g.set_bit(x, true);
        --remaining;
      }
    }
  }
  return finish(std::move(g), conv);
}

BooleanFunction majority(int n, ValueConvention conv) {
  if (n % 2 == 0) throw std::invalid_argument("majority: n must be odd");
  return hamming_ball(n, 1LL << (n - 1), conv);
}

double and_mi_exact(int k, double alpha) {
  if (k < 1 || k > 30) throw std::out_of_range("and_mi_exact: k outside [1, 30]");
  check_alpha(alpha);
  const double mu = std::ldexp(1.0, -k);
  KahanSum cond;
  for (int m = 0; m <= k; ++m) {
    const double p = std::pow(1.0 - alpha, m) * std::pow(alpha, k - m);
    cond += std::exp(log_choose(k, m)) * mu * binary_entropy(p);
  }
  return binary_entropy(mu) - cond.value();
}

double and_mi_simple_form(int k, double alpha) {
  return k * std::ldexp(1.0, 1 - k) * (1.0 - binary_entropy(alpha));
}

double and_w1_exact(int k) { return k * std::ldexp(1.0, -2 * k); }

double c2_coefficient(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("c2_coefficient: mu outside (0, 1)");
  return -1.0 / (2.0 * std::numbers::ln2 * mu * (1.0 - mu));
}

TaylorCheck second_order_entropy_check(const BooleanFunction& f, double rho, double rel_tol,
                                       double abs_tol) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("taylor check: rho outside (0, 1)");
  const auto g = f.with_convention(ValueConvention::zero_one);
  TaylorCheck out;
  out.mean = g.density();
  const auto spec = fwht(g);
  out.w1 = degree_weight(spec, 1);
  if (out.mean == 0.0 || out.mean == 1.0) {
    out.pass = true;
    return out;
  }
  const auto t = noise_operator(spec, rho);
  const double mu = out.mean;
  const double h_mu = binary_entropy(mu);
  const double slope = std::log2((1.0 - mu) / mu);
  // E[T - mu] = 0, so subtracting the tangent line leaves the same mean and
  // removes the first-order cancellation.
  KahanSum acc;
  for (double v : t) acc += binary_entropy_clamped(v) - h_mu - slope * (v - mu);
  out.lhs = std::ldexp(acc.value(), -f.num_vars()) / (rho * rho);
  out.rhs = c2_coefficient(mu) * out.w1;
  out.error = std::abs(out.lhs - out.rhs);
  out.pass = out.error <= rel_tol * std::abs(out.rhs) + abs_tol;
  return out;
}

}  // namespace infolab
