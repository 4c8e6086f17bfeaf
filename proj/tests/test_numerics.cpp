#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "infolab/entropy.hpp"
#include "infolab/kernels.hpp"
#include "infolab/psi.hpp"
#include "infolab/quadrature.hpp"
#include "infolab/rng.hpp"

using namespace infolab;

namespace {

// Independent oracles: natural-log entropy converted to bits, erfc-based cdf.
double h_oracle(double p) {
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log(p) + (1 - p) * std::log1p(-p)) / std::log(2.0);
}
double cdf_oracle(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("binary entropy against the natural-log oracle") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  for (double p = 0.001; p < 1.0; p += 0.0173) {
    CHECK(binary_entropy(p) == doctest::Approx(h_oracle(p)).epsilon(1e-13));
    CHECK(binary_entropy(p) == doctest::Approx(binary_entropy(1 - p)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
  CHECK(binary_entropy_clamped(1.0 + 1e-12) == 0.0);
  CHECK_THROWS(binary_entropy_clamped(1.0 + 1e-6));
}

TEST_CASE("phi and its Jensen gap") {
  CHECK(phi(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(phi(1.0) == doctest::Approx(1.0));
  CHECK(phi(-1.0) == doctest::Approx(1.0));
  CHECK(phi(0.5) == doctest::Approx(0.1887218755408672).epsilon(1e-12));

  const std::vector<double> v{-1.0, 1.0};
  CHECK(phi_entropy(v) == doctest::Approx(1.0));
  CounterRng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> vals(8);
    for (double& x : vals) x = 2 * rng.uniform() - 1;
    CHECK(phi_entropy(vals) >= -1e-15);
  }
  const std::vector<double> bad{2.0};
  CHECK_THROWS(phi_entropy(bad));
}

TEST_CASE("normal distribution helpers") {
  for (double z = -8; z <= 8; z += 0.37) {
    CHECK(normal_cdf(z) == doctest::Approx(cdf_oracle(z)).epsilon(1e-13));
  }
  CHECK(normal_ccdf(10.0) == doctest::Approx(0.5 * std::erfc(10 / std::sqrt(2.0))).epsilon(1e-12));
  for (double p : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.77, 0.999, 1 - 1e-9}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(gaussian_isoperimetric(0.5) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(normal_interval(-INFINITY, INFINITY) == doctest::Approx(1.0));
  CHECK(normal_interval(-1, 1) == doctest::Approx(std::erf(1 / std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("channel bounds") {
  CHECK(erkip_bound(0.25) == doctest::Approx(0.25));
  CHECK(flip_to_correlation(0.1) == doctest::Approx(0.8));
  CHECK(correlation_to_flip(0.8) == doctest::Approx(0.1));
  CHECK(osw_lower_alpha() == doctest::Approx(0.5 * (1 - 1 / std::sqrt(3.0))));
  CHECK_THROWS(osw_bound(0.1));
  // Both bounds exceed the dictator value 1 - h(alpha) on their range.
  for (double a = 0.22; a <= 0.5; a += 0.02) {
    CHECK(osw_bound(a) >= 1 - binary_entropy(a) - 1e-15);
    CHECK(erkip_bound(a) >= 1 - binary_entropy(a));
  }
}

TEST_CASE("binomial helpers match exact counts") {
  CHECK(std::exp(log_choose(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(std::isinf(log_choose(5, 6)));
  const auto pmf = binomial_pmf(12, 0.3);
  double s = 0;
  for (int k = 0; k <= 12; ++k) {
    s += pmf[k];
    const double exact = std::exp(log_choose(12, k)) * std::pow(0.3, k) * std::pow(0.7, 12 - k);
    CHECK(pmf[k] == doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(binomial_pmf(4, 0.0)[0] == 1.0);
  CHECK(binomial_pmf(4, 1.0)[4] == 1.0);
  const auto flips = flip_pattern_probabilities(5, 0.2);
  CHECK(flips[2] == doctest::Approx(0.04 * 0.512));
  CHECK(flip_pattern_probabilities(3, 0.0)[0] == 1.0);
  CHECK(flip_pattern_probabilities(3, 0.0)[1] == 0.0);
}

TEST_CASE("compensated summation") {
  KahanSum s;
  for (double x : {1.0, 1e100, 1.0, -1e100}) s += x;
  CHECK(s.value() == 2.0);
}

TEST_CASE("adaptive quadrature and Gauss-Hermite") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate(normal_pdf, -10, 10) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> br{0.3};
  CHECK(integrate([](double x) { return x < 0.3 ? 1.0 : 0.0; }, 0, 1, br) ==
        doctest::Approx(0.3).epsilon(1e-12));
  const auto gh = gauss_hermite(200);
  double m0 = 0, m2 = 0, m4 = 0;
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    const double x = gh.nodes[i];
    m0 += gh.weights[i];
    m2 += gh.weights[i] * x * x;
    m4 += gh.weights[i] * x * x * x * x;
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(m4 == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("Psi specifications") {
  const auto neg = PsiSpec::parse("neg-entropy");
  CHECK(neg(0.5) == doctest::Approx(-1.0));
  CHECK(neg(1.0 + 1e-12) == doctest::Approx(0.0));
  CHECK_THROWS(neg(1.1));
  CHECK_FALSE(neg.is_increasing());
  const auto sq = PsiSpec::parse("square");
  CHECK(sq(3.0) == 9.0);
  CHECK(sq.is_increasing());
  const auto p3 = PsiSpec::parse("abs-power:3");
  CHECK(p3(-2.0) == doctest::Approx(8.0));
  CHECK_THROWS(PsiSpec::abs_power(0.5));
  CHECK_THROWS(PsiSpec::custom_table({0.0, 1.0, 0.0}));
  const auto t = PsiSpec::custom_table({0.0, 0.0, 1.0});
  CHECK(t(0.75) == doctest::Approx(0.5));
  CHECK_THROWS(PsiSpec::parse("cube"));
}

TEST_CASE("counter RNG is reproducible and stream-separated") {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  CounterRng u(1);
  double mean = 0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    CHECK(v < 1.0);
    mean += v / 100000;
  }
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  for (int i = 0; i < 1000; ++i) CHECK(u.below(7) < 7u);
}

TEST_CASE("chunked sum does not depend on execution mode") {
  const auto term = [](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)); };
  const double s = kernels::chunked_sum(100003, term, Execution::serial);
  const double p = kernels::chunked_sum(100003, term, Execution::parallel);
  CHECK(s == p);
  CHECK(kernels::chunked_sum(0, term, Execution::serial) == 0.0);
}
