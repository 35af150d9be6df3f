#include "sgtest/simd.hpp"

#if defined(SGTEST_BUILD_AVX2)

#include <immintrin.h>

namespace sgt::simd::detail {

namespace {

// Compare an 8-lane block of `a` against all cyclic rotations of an 8-lane
// block of `b`. Inputs are strictly increasing, so each lane of `a` matches
// at most one element of `b` and the or-accumulated equality mask counts
// every common value exactly once.
inline int block_match_mask(__m256i va, __m256i vb) {
  const __m256i rot1 = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
  __m256i match = _mm256_cmpeq_epi32(va, vb);
  for (int r = 1; r < 8; ++r) {
    vb = _mm256_permutevar8x32_epi32(vb, rot1);
    match = _mm256_or_si256(match, _mm256_cmpeq_epi32(va, vb));
  }
  return _mm256_movemask_ps(_mm256_castsi256_ps(match));
}

}  // namespace

std::size_t intersect_count_avx2(const std::uint32_t* a, std::size_t na,
                                 const std::uint32_t* b, std::size_t nb) {
  std::size_t i = 0, j = 0, count = 0;
  while (i + 8 <= na && j + 8 <= nb) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
    count += static_cast<std::size_t>(__builtin_popcount(block_match_mask(va, vb)));
    // Advance the block whose maximum is smaller; everything at or below
    // min(a_max, b_max) has been fully compared.
    const std::uint32_t a_max = a[i + 7];
    const std::uint32_t b_max = b[j + 7];
    if (a_max <= b_max) i += 8;
    if (b_max <= a_max) j += 8;
  }
  count += intersect_count_scalar(a + i, na - i, b + j, nb - j);
  return count;
}

std::size_t bernoulli_select_avx2(const double* u, const double* p,
                                  std::size_t n, std::uint32_t* out) {
  std::size_t k = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vu = _mm256_loadu_pd(u + i);
    const __m256d vp = _mm256_loadu_pd(p + i);
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(vu, vp, _CMP_LT_OQ));
    while (mask != 0) {
      const int bit = __builtin_ctz(static_cast<unsigned>(mask));
      out[k++] = static_cast<std::uint32_t>(i + static_cast<std::size_t>(bit));
      mask &= mask - 1;
    }
  }
  for (; i < n; ++i) {
    if (u[i] < p[i]) out[k++] = static_cast<std::uint32_t>(i);
  }
  return k;
}

}  // namespace sgt::simd::detail

#endif  // SGTEST_BUILD_AVX2
