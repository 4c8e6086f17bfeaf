#include <doctest.h>

#include <cmath>
#include <numbers>

#include "infolab/boolean_analysis.hpp"
#include "infolab/entropy.hpp"
#include "infolab/symmetric.hpp"

using namespace infolab;

namespace {

long long ball_size(int n, int r) {
  long long s = 0, c = 1;
  for (int w = 0; w <= r; ++w) {
    s += c;
    c = c * (n - w) / (w + 1);
  }
  return s;
}

}  // namespace

TEST_CASE("full-level balls agree with the truth-table path") {
  for (int n = 1; n <= 10; ++n) {
    for (int r = 0; r < n; ++r) {
      const auto f = hamming_ball(n, ball_size(n, r));
      const auto p = ball_profile(n, r);
      CHECK(p.mean() == doctest::Approx(f.density()).epsilon(1e-14));
      CHECK(symmetric_mi(p, 0.17) == doctest::Approx(mutual_information_direct(f, 0.17)).epsilon(1e-11));
      CHECK(symmetric_w1(p) == doctest::Approx(degree_weight(fwht(f), 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("conditional probabilities equal T_rho f on each level") {
  const int n = 7;
  const auto f = hamming_ball(n, ball_size(n, 2));
  const double alpha = 0.21;
  const auto t = noise_operator(fwht(f), flip_to_correlation(alpha));
  const auto cond = symmetric_conditional(ball_profile(n, 2), alpha);
  for (std::size_t y = 0; y < f.size(); ++y) {
    CHECK(cond[__builtin_popcountll(y)] == doctest::Approx(t[y]).epsilon(1e-13));
  }
}

TEST_CASE("fractional levels give a lower bound") {
  for (int n : {6, 8, 9}) {
    for (long long m : {3LL, 11LL, 20LL}) {
      const double mu = static_cast<double>(m) / (1 << n);
      const auto ball = exact_mean_ball_profile(n, mu);
      CHECK(ball.profile.mean() == doctest::Approx(mu).epsilon(1e-13));
      CHECK(symmetric_mi(ball.profile, 0.3) <= mutual_information_direct(hamming_ball(n, m), 0.3) + 1e-13);
    }
  }
}

TEST_CASE("exact W1 of a ball") {
  for (int n = 2; n <= 9; ++n) {
    for (int r = 1; r < n; ++r) {
      CHECK(hamming_ball_w1_exact(n, r) ==
            doctest::Approx(degree_weight(fwht(hamming_ball(n, ball_size(n, r))), 1)).epsilon(1e-12));
    }
  }
  CHECK(hamming_ball_w1_exact(3, 2) == doctest::Approx(3.0 / 64));
  CHECK_THROWS(hamming_ball_w1_exact(5, 5));
}

TEST_CASE("W1 of the half ball approaches U(1/2)^2") {
  const double target = 1.0 / (2 * std::numbers::pi);
  const double w = hamming_ball_w1_exact(1001, 500);
  CHECK(std::abs(w - target) / target < 0.05);
  CHECK(w * 2 * std::numbers::pi == doctest::Approx(1.0005).epsilon(2e-4));
}

TEST_CASE("profile validation") {
  SymmetricProfile p{3, {1.0, 0.5, 0.0}};
  CHECK_THROWS(p.validate());
  p.levels = {1.0, 1.5, 0.0, 0.0};
  CHECK_THROWS(p.validate());
  CHECK_THROWS(ball_profile(2001, 3));
  CHECK_THROWS(exact_mean_ball_profile(10, 1.5));
  CHECK(symmetric_mi(ball_profile(5, -1), 0.1) == doctest::Approx(0.0));
}
