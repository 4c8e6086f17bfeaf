#include "infolab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "infolab/entropy.hpp"
#include "infolab/quadrature.hpp"

namespace infolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOuterLimit = 10.0;

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("rho must lie in [0, 1)");
}

double parse_end(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw std::invalid_argument("interval end must be a number, \"inf\" or \"-inf\"");
}

nlohmann::json dump_end(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

// Integral of g(U_rho f(x)) against the standard normal density, split where
// rho x crosses a set endpoint.
template <class G>
double smoothed_expectation(const GaussianSetSpec& f, double rho, G&& g, double abs_tol) {
  std::vector<double> breaks;
  for (const auto& iv : f.intervals()) {
    for (double e : {iv.lo, iv.hi}) {
      if (std::isfinite(e)) breaks.push_back(e / rho);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  return integrate([&](double s) { return g(ou_apply(f, rho, s)) * normal_pdf(s); }, -kOuterLimit,
                   kOuterLimit, breaks, abs_tol);
}

}  // namespace

// --- sets ------------------------------------------------------------------

GaussianSetSpec GaussianSetSpec::halfspace(double t) {
  if (std::isnan(t)) throw std::invalid_argument("halfspace threshold is NaN");
  return GaussianSetSpec(Kind::halfspace, {{t, kInf}});
}

GaussianSetSpec GaussianSetSpec::halfspace_with_measure(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("halfspace measure must lie in (0, 1)");
  return halfspace(-normal_quantile(mu));
}

GaussianSetSpec GaussianSetSpec::interval_union(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo < iv.hi)) {
      throw std::invalid_argument("interval must satisfy lo < hi");
    }
    if (i > 0 && !(intervals[i - 1].hi < iv.lo)) {
      throw std::invalid_argument("intervals must be disjoint and not touching");
    }
  }
  return GaussianSetSpec(Kind::interval_union, std::move(intervals));
}

GaussianSetSpec GaussianSetSpec::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "halfspace") return halfspace(parse_end(j.at("t")));
  if (kind == "intervals") {
    std::vector<Interval> ivs;
    for (const auto& e : j.at("intervals")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("interval must be [lo, hi]");
      ivs.push_back({parse_end(e[0]), parse_end(e[1])});
    }
    return interval_union(std::move(ivs));
  }
  throw std::invalid_argument("unknown set kind '" + kind + "'");
}

std::string GaussianSetSpec::to_json() const {
  nlohmann::json j;
  if (kind_ == Kind::halfspace) {
    j["kind"] = "halfspace";
    j["t"] = dump_end(threshold());
  } else {
    j["kind"] = "intervals";
    auto arr = nlohmann::json::array();
    for (const auto& iv : intervals_) arr.push_back({dump_end(iv.lo), dump_end(iv.hi)});
    j["intervals"] = std::move(arr);
  }
  return j.dump();
}

bool GaussianSetSpec::contains(double x1) const noexcept {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return x1 >= iv.lo && x1 <= iv.hi; });
}

double GaussianSetSpec::measure() const {
  KahanSum s;
  for (const auto& iv : intervals_) s += normal_interval(iv.lo, iv.hi);
  return std::clamp(s.value(), 0.0, 1.0);
}

GaussianSetSpec random_interval_union(double mu, int pieces, CounterRng& rng) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("random_interval_union: mu outside (0, 1)");
  if (pieces < 1) throw std::invalid_argument("random_interval_union: need at least one piece");
  const auto exponentials = [&](int k) {
    std::vector<double> e(static_cast<std::size_t>(k));
    double total = 0.0;
    for (double& v : e) {
      v = -std::log(rng.open_uniform());
      total += v;
    }
    for (double& v : e) v /= total;
    return e;
  };
  const auto lengths = exponentials(pieces);
  const auto gaps = exponentials(pieces + 1);
  const auto to_x = [](double u) {
    if (u <= 0.0) return -kInf;
    if (u >= 1.0) return kInf;
    return normal_quantile(u);
  };
  std::vector<Interval> ivs;
  double u = (1.0 - mu) * gaps[0];
  for (int i = 0; i < pieces; ++i) {
    const double lo = u;
    const double hi = u + mu * lengths[i];
    ivs.push_back({to_x(lo), to_x(hi)});
    u = hi + (1.0 - mu) * gaps[i + 1];
  }
  return GaussianSetSpec::interval_union(std::move(ivs));
}

// --- kernels ---------------------------------------------------------------

double mehler_kernel(std::span<const double> x, std::span<const double> y, double rho) {
  check_rho(rho);
  if (x.size() != y.size()) throw std::invalid_argument("mehler_kernel: dimension mismatch");
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx += x[i] * x[i];
    yy += y[i] * y[i];
    xy += x[i] * y[i];
  }
  const double q = 1.0 - rho * rho;
  const double n = static_cast<double>(x.size());
  return std::exp(-0.5 * n * std::log(q) -
                  (rho * rho * (xx + yy) - 2.0 * rho * xy) / (2.0 * q));
}

double mehler_kernel_opposite_sign(std::span<const double> x, std::span<const double> y,
                                   double rho) {
  check_rho(rho);
  if (x.size() != y.size()) throw std::invalid_argument("mehler_kernel: dimension mismatch");
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx += x[i] * x[i];
    yy += y[i] * y[i];
    xy += x[i] * y[i];
  }
  const double q = 1.0 - rho * rho;
  const double n = static_cast<double>(x.size());
  return std::exp(-0.5 * n * std::log(q) -
                  (rho * rho * (xx + yy) + 2.0 * rho * xy) / (2.0 * q));
}

double ou_apply(const GaussianSetSpec& f, double rho, double x1) {
  check_rho(rho);
  const double s = std::sqrt(1.0 - rho * rho);
  const double c = rho * x1;
  if (f.kind() == GaussianSetSpec::Kind::halfspace) {
    return normal_cdf((c - f.threshold()) / s);
  }
  KahanSum acc;
  for (const auto& iv : f.intervals()) acc += normal_interval((iv.lo - c) / s, (iv.hi - c) / s);
  return std::clamp(acc.value(), 0.0, 1.0);
}

double ou_apply_kernel(const GaussianSetSpec& f, double rho, double x1, double abs_tol) {
  check_rho(rho);
  const double s = std::sqrt(1.0 - rho * rho);
  const double c = rho * x1;
  // The integrand is negligible more than 15 standard deviations from rho x.
  const double lo_cut = c - 15.0 * s;
  const double hi_cut = c + 15.0 * s;
  const double x[1] = {x1};
  KahanSum acc;
  for (const auto& iv : f.intervals()) {
    const double a = std::max(iv.lo, lo_cut);
    const double b = std::min(iv.hi, hi_cut);
    if (!(a < b)) continue;
    acc += integrate(
        [&](double y) {
          const double yy[1] = {y};
          return mehler_kernel(x, yy, rho) * normal_pdf(y);
        },
        a, b, abs_tol);
  }
  return acc.value();
}

double neg_cond_entropy(const GaussianSetSpec& f, double rho, double abs_tol) {
  check_rho(rho);
  if (rho == 0.0) return -binary_entropy(f.measure());
  return smoothed_expectation(
      f, rho, [](double p) { return -binary_entropy(std::clamp(p, 0.0, 1.0)); }, abs_tol);
}

double gaussian_mi(const GaussianSetSpec& f, double rho) {
  return binary_entropy(f.measure()) + neg_cond_entropy(f, rho);
}

double psi_expectation(const GaussianSetSpec& f, const PsiSpec& psi, double rho, double abs_tol) {
  check_rho(rho);
  if (rho == 0.0) return psi(f.measure());
  return smoothed_expectation(f, rho, [&](double p) { return psi(p); }, abs_tol);
}

BorellCheck borell_check(const GaussianSetSpec& f, const PsiSpec& psi, double rho, double tol) {
  if (!psi.is_increasing()) throw std::invalid_argument("borell_check: Psi must be increasing");
  BorellCheck c;
  c.value_f = psi_expectation(f, psi, rho);
  const double mu = f.measure();
  if (mu <= 0.0 || mu >= 1.0) {
    c.value_halfspace = psi(mu);
  } else {
    c.value_halfspace = psi_expectation(GaussianSetSpec::halfspace_with_measure(mu), psi, rho);
  }
  c.pass = c.value_f <= c.value_halfspace + tol;
  return c;
}

}  // namespace infolab
