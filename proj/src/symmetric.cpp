#include "infolab/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "infolab/entropy.hpp"

namespace infolab {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxSymmetricVars) {
    throw std::out_of_range("symmetric profile: n outside [1, 2000]");
  }
}

}  // namespace

void SymmetricProfile::validate() const {
  check_n(n);
  if (levels.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("symmetric profile: need n + 1 levels");
  }
  for (double v : levels) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("symmetric profile: level outside [0, 1]");
  }
}

double SymmetricProfile::mean() const {
  validate();
  const auto pmf = binomial_pmf(n, 0.5);
  KahanSum acc;
  for (int w = 0; w <= n; ++w) acc += pmf[w] * levels[w];
  return acc.value();
}

SymmetricProfile ball_profile(int n, int r) {
  check_n(n);
  if (r < -1 || r > n) throw std::out_of_range("ball_profile: radius outside [-1, n]");
  SymmetricProfile p{n, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0)};
  for (int w = 0; w <= r; ++w) p.levels[w] = 1.0;
  return p;
}

ExactMeanBall exact_mean_ball_profile(int n, double mu) {
  check_n(n);
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("exact_mean_ball_profile: mu outside (0, 1)");
  const auto pmf = binomial_pmf(n, 0.5);
  ExactMeanBall out;
  out.profile = SymmetricProfile{n, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0)};
  KahanSum filled;
  for (int w = 0; w <= n; ++w) {
    const double need = mu - filled.value();
    if (pmf[w] >= need) {
      out.boundary_level = w;
      out.boundary_fraction = std::clamp(need / pmf[w], 0.0, 1.0);
      out.profile.levels[w] = out.boundary_fraction;
      break;
    }
    out.profile.levels[w] = 1.0;
    filled += pmf[w];
  }
  return out;
}

std::vector<double> symmetric_conditional(const SymmetricProfile& profile, double alpha) {
  profile.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("symmetric_mi: alpha outside [0, 1]");
  const int n = profile.n;

  // levels[w] = sum_t c_t [w <= t] with c_t = levels[t] - levels[t + 1].
  std::vector<std::pair<int, double>> steps;
  for (int t = 0; t <= n; ++t) {
    const double next = t < n ? profile.levels[t + 1] : 0.0;
    const double c = profile.levels[t] - next;
    if (c != 0.0) steps.emplace_back(t, c);
  }

  std::vector<double> cond(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    // Given |y| = j: |x| = (set bits of y that survive) + (clear bits that flip).
    const auto keep = binomial_pmf(j, 1.0 - alpha);
    const auto flip = binomial_pmf(n - j, alpha);
    std::vector<double> flip_cdf(flip.size());
    KahanSum run;
    for (std::size_t b = 0; b < flip.size(); ++b) {
      run += flip[b];
      flip_cdf[b] = run.value();
    }
    KahanSum pj;
    for (const auto& [t, c] : steps) {
      // Pr[|x| <= t] = sum_a keep[a] * flip_cdf[min(t - a, n - j)].
      KahanSum below;
      for (int a = 0; a <= std::min(j, t); ++a) {
        below += keep[a] * flip_cdf[std::min(t - a, n - j)];
      }
      pj += c * below.value();
    }
    cond[j] = std::clamp(pj.value(), 0.0, 1.0);
  }
  return cond;
}

double symmetric_mi(const SymmetricProfile& profile, double alpha) {
  const auto cond = symmetric_conditional(profile, alpha);
  const auto pmf = binomial_pmf(profile.n, 0.5);
  KahanSum acc;
  for (int j = 0; j <= profile.n; ++j) acc += pmf[j] * binary_entropy(cond[j]);
  return binary_entropy(std::clamp(profile.mean(), 0.0, 1.0)) - acc.value();
}

double symmetric_w1(const SymmetricProfile& profile) {
  profile.validate();
  const int n = profile.n;
  if (n == 1) {
    const double c = 0.5 * (profile.levels[0] - profile.levels[1]);
    return c * c;
  }
  // fhat({i}) = (E[f | x_i = +1] - E[f | x_i = -1]) / 2.
  const auto pmf = binomial_pmf(n - 1, 0.5);
  KahanSum acc;
  for (int w = 0; w <= n; ++w) {
    const double plus = w < n ? pmf[w] : 0.0;
    const double minus = w > 0 ? pmf[w - 1] : 0.0;
    acc += profile.levels[w] * (plus - minus);
  }
  const double c = 0.5 * acc.value();
  return n * c * c;
}

double hamming_ball_w1_exact(int n, int r) {
  if (n < 2 || n > kMaxSymmetricVars || r < 1 || r >= n) {
    throw std::out_of_range("hamming_ball_w1_exact: need 1 <= r < n <= 2000");
  }
  const double c = 0.5 * std::exp(log_choose(n - 1, r) - (n - 1) * std::log(2.0));
  return n * c * c;
}

}  // namespace infolab
