#include "sgtest/simd.hpp"

namespace sgt::simd::detail {

// Reference kernels. Deliberately plain two-pointer / linear-scan code:
// the vector variants are validated against these.

std::size_t intersect_count_scalar(const std::uint32_t* a, std::size_t na,
                                   const std::uint32_t* b, std::size_t nb) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < na && j < nb) {
    const std::uint32_t x = a[i];
    const std::uint32_t y = b[j];
    count += (x == y);
    i += (x <= y);
    j += (y <= x);
  }
  return count;
}

std::size_t bernoulli_select_scalar(const double* u, const double* p,
                                    std::size_t n, std::uint32_t* out) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] < p[i]) out[k++] = static_cast<std::uint32_t>(i);
  }
  return k;
}

}  // namespace sgt::simd::detail
