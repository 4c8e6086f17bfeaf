#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "infolab/boolean_analysis.hpp"
#include "infolab/boolean_search.hpp"
#include "infolab/entropy.hpp"
#include "infolab/rng.hpp"

using namespace infolab;

namespace {

// Orbit closure by brute force: apply generators until nothing new appears.
std::set<std::uint64_t> orbit(int n, std::uint64_t table) {
  const std::size_t size = std::size_t{1} << n;
  const std::uint64_t full = size == 64 ? ~0ull : (1ull << size) - 1;
  const auto remap = [&](std::uint64_t t, auto&& index_map) {
    std::uint64_t out = 0;
    for (std::size_t x = 0; x < size; ++x) {
      if ((t >> x) & 1u) out |= 1ull << index_map(x);
    }
    return out;
  };
  std::set<std::uint64_t> seen{table};
  std::vector<std::uint64_t> todo{table};
  while (!todo.empty()) {
    const auto t = todo.back();
    todo.pop_back();
    std::vector<std::uint64_t> next{full & ~t};
    for (int b = 0; b < n; ++b) {
      next.push_back(remap(t, [&](std::size_t x) { return x ^ (std::size_t{1} << b); }));
      if (b + 1 < n) {
        next.push_back(remap(t, [&](std::size_t x) {
          const std::size_t lo = (x >> b) & 1u, hi = (x >> (b + 1)) & 1u;
          std::size_t y = x & ~((std::size_t{3}) << b);
          return y | (lo << (b + 1)) | (hi << b);
        }));
      }
    }
    for (auto u : next) {
      if (seen.insert(u).second) todo.push_back(u);
    }
  }
  return seen;
}

// Compares tables as index-ascending 0/1 strings.
bool table_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const int bit = __builtin_ctzll(a ^ b);
  return (a >> bit) & 1u ? false : true;
}

}  // namespace

TEST_CASE("small-cube channel agrees with the direct MI") {
  CounterRng rng(21);
  for (int n = 1; n <= 5; ++n) {
    const SmallCubeChannel ch(n, 0.13);
    for (int t = 0; t < 30; ++t) {
      const std::uint64_t word = rng() & (n == 5 ? ~0ull >> 32 : (1ull << (1u << n)) - 1);
      CHECK(ch.mutual_information(word) ==
            doctest::Approx(mutual_information_direct(BooleanFunction::from_word(n, word), 0.13)).epsilon(1e-12));
    }
  }
  CHECK_THROWS(SmallCubeChannel(6, 0.1));
}

TEST_CASE("dictator tables") {
  CHECK(dictator_tables(2) == std::vector<std::uint64_t>{0b0011, 0b0101, 0b1010, 0b1100});
}

TEST_CASE("exhaustive scan at n = 2 and n = 3") {
  const auto r = exhaustive_verify(2, 0.3);
  // 1 - h(0.3) evaluated independently.
  CHECK(r.max_mi == doctest::Approx(0.11870910077).epsilon(1e-9));
  CHECK(r.argmax_is_dictators);
  CHECK(r.argmax_count == 4);
  CHECK(r.functions_scanned == 16);
  CHECK(r.bound_satisfied);
  const auto r3 = exhaustive_verify(3, 0.05);
  CHECK(r3.argmax_is_dictators);
  CHECK(std::abs(r3.max_mi - (1 - binary_entropy(0.05))) < 1e-12);
}

TEST_CASE("exhaustive scan at n = 4 against per-table direct MI") {
  const double alpha = 0.2;
  const auto r = exhaustive_verify(4, alpha, Execution::parallel);
  double best = 0;
  for (std::uint64_t t = 0; t < (1u << 16); t += 97) {
    best = std::max(best, mutual_information_direct(BooleanFunction::from_word(4, t), alpha));
  }
  CHECK(best <= r.max_mi + 1e-12);
  CHECK(r.argmax == dictator_tables(4));
  CHECK(r.max_mi <= erkip_bound(alpha));
}

TEST_CASE("all_function_mi lists every table") {
  const auto mi = all_function_mi(2, 0.1);
  REQUIRE(mi.size() == 16);
  for (std::uint64_t t = 0; t < 16; ++t) {
    CHECK(mi[t] == doctest::Approx(mutual_information_direct(BooleanFunction::from_word(2, t), 0.1)).epsilon(1e-12));
  }
}

TEST_CASE("fixed-mean maximum matches brute force") {
  for (long long m : {1LL, 4LL, 6LL}) {
    const auto r = fixed_mean_max(4, m, 0.1);
    double best = 0;
    for (std::uint64_t t = 0; t < (1u << 16); ++t) {
      if (__builtin_popcountll(t) == m) {
        best = std::max(best, mutual_information_direct(BooleanFunction::from_word(4, t), 0.1));
      }
    }
    CHECK(r.max_mi == doctest::Approx(best).epsilon(1e-12));
    REQUIRE(r.lex_attains.has_value());
    const double lex_mi = mutual_information_direct(lex(4, m), 0.1);
    CHECK(*r.lex_attains == (std::abs(lex_mi - r.max_mi) <= kTieTolerance));
  }
}

TEST_CASE("canonical form is the least element of the orbit") {
  CounterRng rng(22);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 10; ++t) {
      const std::uint64_t table = rng() & ((1ull << (1u << n)) - 1);
      const auto orb = orbit(n, table);
      const auto least = *std::min_element(orb.begin(), orb.end(), table_less);
      CHECK(canonical_form(n, table) == least);
      for (auto u : orb) CHECK(canonical_form(n, u) == least);
    }
  }
}

TEST_CASE("orbit counts under permutation, negation and complement") {
  for (auto [n, expected] : {std::pair{2, 4}, std::pair{3, 14}, std::pair{4, 222}}) {
    std::set<std::uint64_t> reps;
    for (std::uint64_t t = 0; t < (1ull << (1u << n)); ++t) reps.insert(canonical_form(n, t));
    CHECK(reps.size() == static_cast<std::size_t>(expected));
  }
  const auto f = dictator(5, 3);
  CHECK(canonical_form(f).same_table(canonical_form(dictator(5, 1))));
}

TEST_CASE("n = 5 scan resumes from a checkpoint to the same state") {
  const auto path = (std::filesystem::temp_directory_path() / "infolab_scan5_test.json").string();
  std::filesystem::remove(path);
  const std::uint64_t sub = 1u << 14;

  Scan5Options one;
  one.alpha = 0.2;
  one.budget = 3 * sub;
  one.block = sub;
  const auto straight = scan_n5(one);

  Scan5Options part = one;
  part.checkpoint_path = path;
  part.budget = sub;
  part.exec = Execution::serial;
  scan_n5(part);
  part.budget = 2 * sub;
  const auto resumed = scan_n5(part);

  CHECK(resumed.watermark == straight.watermark);
  CHECK(resumed.max_mi == straight.max_mi);
  CHECK(resumed.canonical_argmax == straight.canonical_argmax);
  CHECK(resumed.functions_scanned == 6 * sub);
  CHECK_FALSE(resumed.complete());

  const auto round = scan5_from_json(scan5_to_json(resumed));
  CHECK(round.max_mi == resumed.max_mi);
  CHECK(round.watermark == resumed.watermark);

  part.alpha = 0.3;
  CHECK_THROWS(scan_n5(part));
  std::filesystem::remove(path);
}

TEST_CASE("ball versus AND") {
  const auto small = lex_failure_scan(3, 8, 0.2);
  CHECK(small.mi_and == doctest::Approx(mutual_information_direct(and_k(8, 3), 0.2)).epsilon(1e-12));
  CHECK(small.mi_ball <= mutual_information_direct(hamming_ball(8, 32), 0.2) + 1e-12);
  CHECK(small.w1_and == doctest::Approx(3.0 / 64));

  const auto witness = lex_failure_scan(6, 200, 0.45);
  CHECK(witness.ball_wins);
  CHECK(witness.margin > 0);
  CHECK(witness.margin == doctest::Approx(witness.mi_ball - witness.mi_and));

  CHECK_THROWS(lex_failure_scan(21, 100, 0.4));
  CHECK_THROWS(lex_failure_scan(5, 5, 0.4));
  CHECK_THROWS(lex_failure_scan(5, 50, 0.6));
}

TEST_CASE("lex failure grid is ordered and execution-independent") {
  const auto s = lex_failure_grid({4, 6}, {50, 200}, {0.45, 0.49}, Execution::serial);
  const auto p = lex_failure_grid({4, 6}, {50, 200}, {0.45, 0.49}, Execution::parallel);
  REQUIRE(s.size() == 8);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].k == p[i].k);
    CHECK(s[i].n == p[i].n);
    CHECK(s[i].mi_ball == p[i].mi_ball);
  }
}
