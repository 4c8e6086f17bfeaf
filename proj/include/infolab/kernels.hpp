#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// version that performs the same floating-point operations in the same order
// per output, so the two agree bit for bit.

#include <cstddef>
#include <span>
#include <vector>

#include "infolab/entropy.hpp"

namespace infolab {

enum class Execution { serial, parallel };

namespace kernels {

/// Unnormalized Walsh-Hadamard butterfly; a.size() must be a power of two.
void fwht_serial(std::span<double> a);
void fwht_parallel(std::span<double> a);

inline void fwht(std::span<double> a, Execution exec) {
  exec == Execution::parallel ? fwht_parallel(a) : fwht_serial(a);
}

/// out[i] = sum_j matrix[i * cols + j] * x[j], row-major, left-to-right per row.
void matvec_serial(std::span<const double> matrix, std::span<const double> x,
                   std::span<double> out);
void matvec_parallel(std::span<const double> matrix, std::span<const double> x,
                     std::span<double> out);

inline void matvec(std::span<const double> matrix, std::span<const double> x,
                   std::span<double> out, Execution exec) {
  exec == Execution::parallel ? matvec_parallel(matrix, x, out) : matvec_serial(matrix, x, out);
}

inline constexpr std::size_t kDefaultChunk = 1024;

/// sum_{i < count} term(i), accumulated per fixed-size chunk and merged in
/// chunk order, so the result does not depend on the number of threads.
template <class Term>
double chunked_sum(std::size_t count, Term&& term, Execution exec,
                   std::size_t chunk = kDefaultChunk) {
  if (count == 0) return 0.0;
  const std::size_t chunks = (count + chunk - 1) / chunk;
  std::vector<double> partial(chunks, 0.0);
  const auto body = [&](std::size_t c) {
    KahanSum acc;
    const std::size_t end = (c + 1) * chunk < count ? (c + 1) * chunk : count;
    for (std::size_t i = c * chunk; i < end; ++i) acc += term(i);
    partial[c] = acc.value();
  };
  if (exec == Execution::parallel) {
    const auto n = static_cast<long long>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < n; ++c) body(static_cast<std::size_t>(c));
  } else {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
  }
  KahanSum total;
  for (double p : partial) total += p;
  return total.value();
}

/// Number of OpenMP threads a parallel region would use.
int max_threads();

}  // namespace kernels
}  // namespace infolab
