#include <doctest.h>

#include <cmath>
#include <vector>

#include "infolab/boolean_analysis.hpp"
#include "infolab/boolean_search.hpp"
#include "infolab/kernels.hpp"
#include "infolab/rng.hpp"
#include "infolab/sphere_ops.hpp"

using namespace infolab;

// Every OpenMP kernel must reproduce its serial reference bit for bit.

TEST_CASE("fwht") {
  CounterRng rng(51);
  for (int n : {1, 5, 12, 16}) {
    std::vector<double> a(std::size_t{1} << n);
    for (double& x : a) x = rng.uniform() - 0.5;
    auto b = a;
    kernels::fwht_serial(a);
    kernels::fwht_parallel(b);
    CHECK(a == b);
  }
}

TEST_CASE("matvec") {
  CounterRng rng(52);
  const std::size_t m = 300;
  std::vector<double> mat(m * m), x(m), s(m), p(m);
  for (double& v : mat) v = rng.uniform();
  for (double& v : x) v = rng.uniform();
  kernels::matvec_serial(mat, x, s);
  kernels::matvec_parallel(mat, x, p);
  CHECK(s == p);
}

TEST_CASE("mutual information paths") {
  CounterRng rng(53);
  BooleanFunction f(12);
  for (std::size_t x = 0; x < f.size(); ++x) f.set_bit(x, rng() & 1u);
  CHECK(mutual_information_direct(f, 0.2, Execution::serial) ==
        mutual_information_direct(f, 0.2, Execution::parallel));
  CHECK(mutual_information_phi(f, 0.6, Execution::serial) == mutual_information_phi(f, 0.6, Execution::parallel));
  std::vector<std::uint32_t> table(1u << 9);
  for (auto& v : table) v = static_cast<std::uint32_t>(rng.below(8));
  const MultiOutputFunction g(9, 3, table);
  CHECK(mutual_information_direct(g, 0.1, Execution::serial) ==
        mutual_information_direct(g, 0.1, Execution::parallel));
}

TEST_CASE("exhaustive scans") {
  const auto s = exhaustive_verify(4, 0.15, Execution::serial);
  const auto p = exhaustive_verify(4, 0.15, Execution::parallel);
  CHECK(s.max_mi == p.max_mi);
  CHECK(s.argmax == p.argmax);
  CHECK(s.argmax_count == p.argmax_count);
  const auto fs = fixed_mean_max(4, 5, 0.15, Execution::serial);
  const auto fp = fixed_mean_max(4, 5, 0.15, Execution::parallel);
  CHECK(fs.max_mi == fp.max_mi);
  CHECK(fs.argmax == fp.argmax);
}

TEST_CASE("kernel operator") {
  const auto set = circle_grid(512);
  const KernelOperator op(set, KernelSpec::poisson(0.6, 2));
  CounterRng rng(54);
  std::vector<double> v(set->size());
  for (double& x : v) x = static_cast<double>(rng.below(2));
  CHECK(op.apply(v, Execution::serial) == op.apply(v, Execution::parallel));
  const SphericalField f(set, v);
  CHECK(spherical_mi(f, 0.6, Execution::serial) == spherical_mi(f, 0.6, Execution::parallel));
}
