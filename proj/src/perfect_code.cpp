#include "infolab/perfect_code.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "infolab/entropy.hpp"

namespace infolab {

namespace {

constexpr bool is_power_of_two(int j) { return (j & (j - 1)) == 0; }

}  // namespace

std::uint32_t HammingCode15::syndrome(std::uint32_t word) noexcept {
  std::uint32_t s = 0;
  for (int j = 1; j <= length; ++j) {
    if ((word >> (j - 1)) & 1u) s ^= static_cast<std::uint32_t>(j);
  }
  return s;
}

std::uint32_t HammingCode15::decode(std::uint32_t word) noexcept {
  const std::uint32_t s = syndrome(word);
  return s == 0 ? word : word ^ (1u << (s - 1));
}

std::uint32_t HammingCode15::message(std::uint32_t codeword) noexcept {
  std::uint32_t m = 0;
  int k = 0;
  for (int j = 1; j <= length; ++j) {
    if (is_power_of_two(j)) continue;
    m |= ((codeword >> (j - 1)) & 1u) << k;
    ++k;
  }
  return m;
}

std::uint32_t HammingCode15::encode(std::uint32_t msg) noexcept {
  std::uint32_t word = 0;
  int k = 0;
  for (int j = 1; j <= length; ++j) {
    if (is_power_of_two(j)) continue;
    word |= ((msg >> k) & 1u) << (j - 1);
    ++k;
  }
  // Parity position 2^b absorbs syndrome bit b.
  const std::uint32_t s = syndrome(word);
  for (int b = 0; b < 4; ++b) {
    if ((s >> b) & 1u) word |= 1u << ((1 << b) - 1);
  }
  return word;
}

MultiOutputFunction perfect_code_function() {
  std::vector<std::uint32_t> table(std::size_t{1} << HammingCode15::length);
  for (std::uint32_t x = 0; x < table.size(); ++x) {
    table[x] = HammingCode15::message(HammingCode15::decode(x));
  }
  return MultiOutputFunction(HammingCode15::length, HammingCode15::message_bits,
                             std::move(table));
}

double perfect_code_coset_entropy(int syndrome, double alpha, Execution exec) {
  if (syndrome < 0 || syndrome > HammingCode15::length) {
    throw std::out_of_range("coset syndrome outside [0, 15]");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha outside [0, 1]");
  constexpr std::size_t patterns = std::size_t{1} << HammingCode15::length;
  constexpr std::size_t bins = std::size_t{1} << HammingCode15::message_bits;
  constexpr std::size_t chunk = 4096;
  constexpr std::size_t chunks = patterns / chunk;

  const std::uint32_t leader = syndrome == 0 ? 0u : 1u << (syndrome - 1);
  const auto weight = flip_pattern_probabilities(HammingCode15::length, alpha);

  // Per-chunk histograms merged in chunk order keep the result independent
  // of the thread count.
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(bins, 0.0));
  const auto body = [&](std::size_t c) {
    auto& hist = partial[c];
    for (std::size_t e = c * chunk; e < (c + 1) * chunk; ++e) {
      const double w = weight[std::popcount(e)];
      if (w == 0.0) continue;
      const auto x = leader ^ static_cast<std::uint32_t>(e);
      hist[HammingCode15::message(HammingCode15::decode(x))] += w;
    }
  };
  if (exec == Execution::parallel) {
    const auto n = static_cast<long long>(chunks);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < n; ++c) body(static_cast<std::size_t>(c));
  } else {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
  }

  KahanSum ent;
  for (std::size_t v = 0; v < bins; ++v) {
    KahanSum p;
    for (std::size_t c = 0; c < chunks; ++c) p += partial[c][v];
    const double pv = p.value();
    if (pv > 0.0) ent += -pv * std::log2(pv);
  }
  return ent.value();
}

PerfectCodeResult perfect_code_mi(double alpha, Execution exec) {
  PerfectCodeResult r;
  r.entropy_zero_coset = perfect_code_coset_entropy(0, alpha, exec);
  r.entropy_unit_coset = perfect_code_coset_entropy(1, alpha, exec);
  const double cond = (r.entropy_zero_coset + 15.0 * r.entropy_unit_coset) / 16.0;
  r.mi = HammingCode15::message_bits - cond;
  r.per_bit = r.mi / HammingCode15::message_bits;
  return r;
}

}  // namespace infolab
