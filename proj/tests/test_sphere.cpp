#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "infolab/entropy.hpp"
#include "infolab/rng.hpp"
#include "infolab/sphere_ops.hpp"

using namespace infolab;

namespace {

SphericalField random_field(const PointSetPtr& set, CounterRng& rng) {
  std::vector<double> v(set->size());
  for (double& x : v) x = static_cast<double>(rng.below(2));
  return SphericalField(set, std::move(v));
}

std::vector<double> sorted(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("circle grid reflections permute the points") {
  const auto set = circle_grid(16);
  CHECK(set->size() == 16);
  CHECK(set->reflections().size() == 15);
  for (const auto& s : set->reflections()) {
    CHECK(s.reflection.offset(set->pole()) > 0);
    for (std::size_t i = 0; i < set->size(); ++i) {
      CHECK(s.image[s.image[i]] == i);
      CHECK(s.side[s.image[i]] == -s.side[i]);
      const auto img = s.reflection.apply(set->point(i));
      const auto p = set->point(s.image[i]);
      CHECK(std::hypot(img[0] - p[0], img[1] - p[1]) < 1e-12);
      CHECK(s.side[i] == (std::abs(s.reflection.offset(set->point(i))) < 1e-12
                              ? 0
                              : (s.reflection.offset(set->point(i)) > 0 ? 1 : -1)));
    }
  }
  for (std::size_t i = 0; i < set->size(); ++i) {
    for (std::size_t j = 0; j < set->size(); ++j) {
      const auto a = set->point(i), b = set->point(j);
      CHECK(set->normalized_inner(i, j) == doctest::Approx(a[0] * b[0] + a[1] * b[1]).epsilon(1e-14));
      CHECK(set->normalized_inner(i, j) == set->normalized_inner(j, i));
    }
  }
  CHECK_THROWS(circle_grid(7));
  CHECK_THROWS(circle_grid(6));
}

TEST_CASE("sampled sets are paired and seeded") {
  const auto a = sphere_sample(4, 200, 3);
  const auto b = sphere_sample(4, 200, 3);
  const auto c = sphere_sample(4, 200, 4);
  CHECK(std::equal(a->point(17).begin(), a->point(17).end(), b->point(17).begin()));
  CHECK(a->point(17)[0] != c->point(17)[0]);
  const auto& s = a->reflections().at(0);
  for (std::size_t i = 0; i < a->size(); ++i) {
    const auto p = a->point(i);
    double len = 0;
    for (double x : p) len += x * x;
    CHECK(len == doctest::Approx(1.0).epsilon(1e-14));
    const auto img = s.reflection.apply(p);
    const auto q = a->point(s.image[i]);
    for (int k = 0; k < 4; ++k) CHECK(img[k] == doctest::Approx(q[k]).epsilon(1e-12));
  }
  CHECK_THROWS(sphere_sample(3, 7, 1));
  CHECK_THROWS(Reflection({0.0, 1.0}, std::vector<double>{1.0, 0.0}));
}

TEST_CASE("Poisson kernel mass on the grid matches the closed form") {
  for (int m : {16, 64, 256}) {
    for (double rho : {0.3, 0.5, 0.9}) {
      const auto mass = KernelOperator(circle_grid(m), KernelSpec::poisson(rho, 2)).row_mass();
      // Discrete Poisson sum on M equally spaced points: (1 + rho^M) / (1 - rho^M).
      const double exact = (1 + std::pow(rho, m)) / (1 - std::pow(rho, m));
      for (double x : mass) CHECK(x == doctest::Approx(exact).epsilon(1e-12));
      if (m == 256) {
        for (double x : mass) CHECK(std::abs(x - 1) <= 1e-6);
      }
    }
  }
}

TEST_CASE("kernel specs") {
  const auto p = KernelSpec::poisson(0.0, 3);
  CHECK(p(0.3) == doctest::Approx(1.0));
  const auto step = KernelSpec::step(0.5);
  CHECK(step(0.6) == 1.0);
  CHECK(step(0.4) == 0.0);
  const auto t = KernelSpec::custom_table({0.0, 1.0, 3.0});
  CHECK(t(0.5) == doctest::Approx(2.0));
  CHECK_THROWS(KernelSpec::custom_table({1.0, 0.0}));
  CHECK_THROWS(KernelSpec::poisson(1.0, 2));
}

TEST_CASE("cap measures") {
  // Normalized: arc fraction on the circle, (1 - cos theta) / 2 on S^2.
  CHECK(cap_measure(2, 0.7) == doctest::Approx(0.7 / std::numbers::pi).epsilon(1e-12));
  for (double t : {0.3, 1.2, 2.9}) {
    CHECK(cap_measure(3, t) == doctest::Approx((1 - std::cos(t)) / 2).epsilon(1e-12));
  }
  CHECK(cap_measure(4, std::numbers::pi / 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cap_measure(5, std::numbers::pi) == doctest::Approx(1.0));
  CHECK_THROWS(cap_measure(3, 4.0));
}

TEST_CASE("rearrangement and polarization are equimeasurable") {
  const auto set = circle_grid(32);
  CounterRng rng(31);
  const auto f = random_field(set, rng);
  const auto r = rearrange(f);
  CHECK(sorted(r.values()) == sorted(f.values()));
  const auto rr = rearrange(r);
  CHECK(std::equal(rr.values().begin(), rr.values().end(), r.values().begin(), r.values().end()));
  const auto ones = static_cast<std::size_t>(std::count(f.values().begin(), f.values().end(), 1.0));
  const auto cap = cap_indicator(set, ones);
  CHECK(std::equal(cap.values().begin(), cap.values().end(), r.values().begin()));
  for (std::size_t i = 0; i < set->reflections().size(); ++i) {
    const auto g = polarize(f, i);
    CHECK(sorted(g.values()) == sorted(f.values()));
    const auto gg = polarize(g, i);
    CHECK(std::equal(gg.values().begin(), gg.values().end(), g.values().begin()));
  }
  CHECK_THROWS(polarize(f, 99));
}

TEST_CASE("property: polarization raises J and the pointwise lemmas hold") {
  const auto set = circle_grid(64);
  CounterRng rng(32);
  for (double rho : {0.3, 0.7}) {
    const KernelOperator op(set, KernelSpec::poisson(rho, 2));
    for (const auto& psi : {PsiSpec::neg_binary_entropy(), PsiSpec::square()}) {
      for (int t = 0; t < 5; ++t) {
        const auto f = random_field(set, rng);
        for (std::size_t i = 0; i < set->reflections().size(); ++i) {
          const auto c = polarization_inequality_check(f, i, op, psi);
          CHECK(c.pass);
          CHECK(c.lemmas_pass);
        }
        CHECK(functional_J(psi, op, f) <= functional_J(psi, op, rearrange(f)) + 1e-10);
      }
    }
  }
}

TEST_CASE("iterated polarization increases J step by step") {
  const auto set = circle_grid(64);
  const KernelOperator op(set, KernelSpec::poisson(0.5, 2));
  const auto psi = PsiSpec::square();
  CounterRng rng(33);
  const auto f = random_field(set, rng);
  const auto tr = iterate_polarizations(f, 5, 300, &op, &psi);
  REQUIRE(tr.j_values.size() == 301);
  REQUIRE(tr.l1_to_rearranged.size() == 301);
  for (std::size_t s = 1; s < tr.j_values.size(); ++s) CHECK(tr.j_values[s] >= tr.j_values[s - 1] - 1e-12);
  CHECK(tr.l1_to_rearranged.back() <= tr.l1_to_rearranged.front());
  CHECK(functional_J(psi, op, tr.final_field) <= functional_J(psi, op, rearrange(f)) + 1e-10);
}

TEST_CASE("Monte Carlo sets satisfy the paired polarization check") {
  const auto set = sphere_sample(3, 400, 9);
  const KernelOperator raw(set, KernelSpec::poisson(0.5, 3));
  const auto mass = raw.row_mass();
  const double top = *std::max_element(mass.begin(), mass.end());
  const KernelOperator op(set, KernelSpec::poisson(0.5, 3), 1.0 / top);
  CounterRng rng(34);
  for (const auto& psi : {PsiSpec::neg_binary_entropy(), PsiSpec::square()}) {
    for (int t = 0; t < 5; ++t) {
      const auto c = polarization_inequality_check(random_field(set, rng), 0, op, psi);
      CHECK(c.pass);
      CHECK(c.lemmas_pass);
    }
  }
}

TEST_CASE("spherical mutual information") {
  const auto set = circle_grid(64);
  CHECK(spherical_mi(SphericalField(set, std::vector<double>(64, 1.0)), 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CounterRng rng(35);
  const auto f = random_field(set, rng);
  const double mi = spherical_mi(f, 0.5);
  CHECK(mi >= -1e-12);
  CHECK(spherical_mi(rearrange(f), 0.5) >= mi - 1e-12);
  CHECK(spherical_mi(f, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS(spherical_mi(SphericalField(set, std::vector<double>(64, 0.5)), 0.5));
}

TEST_CASE("field JSON") {
  const auto set = circle_grid(8);
  const auto j = nlohmann::json::parse(field_to_json(cap_indicator(set, 3)));
  CHECK(j["M"] == 8);
  CHECK(j["values"].size() == 8);
  CHECK_FALSE(j.contains("points"));
  const auto k = nlohmann::json::parse(field_to_json(SphericalField(sphere_sample(3, 4, 1), {1, 0, 0, 1})));
  CHECK(k["points"].size() == 4);
}
