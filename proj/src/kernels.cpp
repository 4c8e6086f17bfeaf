#include "infolab/kernels.hpp"

#include <omp.h>

#include <stdexcept>

namespace infolab::kernels {

namespace {

void require_power_of_two(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fwht: length must be a power of two");
  }
}

void require_shape(std::span<const double> matrix, std::span<const double> x,
                   std::span<double> out) {
  if (matrix.size() != x.size() * out.size()) {
    throw std::invalid_argument("matvec: matrix shape does not match vectors");
  }
}

constexpr std::size_t kParallelFwhtMin = 1u << 12;

}  // namespace

void fwht_serial(std::span<double> a) {
  require_power_of_two(a.size());
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = a[j];
        const double v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

void fwht_parallel(std::span<double> a) {
  require_power_of_two(a.size());
  const std::size_t n = a.size();
  if (n < kParallelFwhtMin) {
    fwht_serial(a);
    return;
  }
  const auto half = static_cast<long long>(n / 2);
  double* data = a.data();
  for (std::size_t h = 1; h < n; h <<= 1) {
#pragma omp parallel for schedule(static)
    for (long long p = 0; p < half; ++p) {
      const auto q = static_cast<std::size_t>(p);
      const std::size_t j = (q / h) * (h << 1) + (q % h);
      const double u = data[j];
      const double v = data[j + h];
      data[j] = u + v;
      data[j + h] = u - v;
    }
  }
}

void matvec_serial(std::span<const double> matrix, std::span<const double> x,
                   std::span<double> out) {
  require_shape(matrix, x, out);
  const std::size_t cols = x.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* row = matrix.data() + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
}

void matvec_parallel(std::span<const double> matrix, std::span<const double> x,
                     std::span<double> out) {
  require_shape(matrix, x, out);
  const std::size_t cols = x.size();
  const auto rows = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < rows; ++i) {
    const double* row = matrix.data() + static_cast<std::size_t>(i) * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    out[static_cast<std::size_t>(i)] = acc;
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace infolab::kernels
