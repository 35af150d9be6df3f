#ifndef SGTEST_SIMD_HPP
#define SGTEST_SIMD_HPP

#include <cstddef>
#include <cstdint>
#include <span>

namespace sgt::simd {

// The two data-parallel inner loops of the library, each with a scalar
// reference implementation and an AVX2 variant selected at runtime.
// Both variants are required to return identical results for identical
// inputs (equivalence-tested); the dispatched level is therefore free
// to change without affecting any statistical output.

enum class Level { scalar, avx2 };

const char* level_name(Level level);

// True if this binary carries the variant and the CPU can run it.
bool level_supported(Level level);

// Highest supported level unless overridden; the environment variable
// SUBGRAPH_TEST_SIMD=scalar|avx2|auto is honored at first use.
Level active_level();

// Force a level for this process (testing hook). Throws sgt::BadParameter
// if the level is not supported.
void force_level(Level level);

// Number of values common to two strictly increasing uint32 sequences.
std::size_t intersect_count(std::span<const std::uint32_t> a,
                            std::span<const std::uint32_t> b);

// Writes to `out` the indices i in [0, n) with u[i] < p[i] (ascending) and
// returns how many there are. `out` must have room for n entries.
std::size_t bernoulli_select(const double* u, const double* p, std::size_t n,
                             std::uint32_t* out);

namespace detail {
std::size_t intersect_count_scalar(const std::uint32_t* a, std::size_t na,
                                   const std::uint32_t* b, std::size_t nb);
std::size_t bernoulli_select_scalar(const double* u, const double* p,
                                    std::size_t n, std::uint32_t* out);
#if defined(SGTEST_BUILD_AVX2)
std::size_t intersect_count_avx2(const std::uint32_t* a, std::size_t na,
                                 const std::uint32_t* b, std::size_t nb);
std::size_t bernoulli_select_avx2(const double* u, const double* p,
                                  std::size_t n, std::uint32_t* out);
#endif
}  // namespace detail

}  // namespace sgt::simd

#endif  // SGTEST_SIMD_HPP
