#ifndef SGTEST_RNG_HPP
#define SGTEST_RNG_HPP

#include <array>
#include <cstdint>

namespace sgt {

// SplitMix64 finalizer. Bijective on 64-bit words, so distinct inputs
// always map to distinct outputs.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic per-replicate seed derivation. Each stage is a bijection
// of the running hash, so for a fixed (base, grid) two replicate indices
// can never collide, and likewise for a fixed (base, replicate).
// The mixing constants are part of the file-format/reproducibility
// contract and must not change between versions.
inline std::uint64_t derive_seed(std::uint64_t base_seed,
                                 std::uint64_t grid_index,
                                 std::uint64_t replicate_index) {
  std::uint64_t h = mix64(base_seed + 0x9E3779B97F4A7C15ull);
  h = mix64(h ^ (grid_index + 0xD1B54A32D192ED03ull));
  h = mix64(h ^ (replicate_index + 0x8CB92BA72F3D8DD7ull));
  return h;
}

// xoshiro256** with all derived draws (unit doubles, bounded integers,
// Bernoulli, normal, gamma, beta) implemented in-library so that a given
// seed produces the same stream on every platform and compiler. The
// standard <random> distributions are implementation-defined and would
// break the reproducibility contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), unbiased (Lemire rejection). n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

  bool bernoulli(double p) { return next_unit() < p; }

  // Number of failures before the first success of a Bernoulli(p) stream,
  // computed by inversion; used for linear-time edge sampling. p in (0,1).
  std::uint64_t geometric_skip(double p);

  // Standard normal via the Marsaglia polar method; the second deviate of
  // each accepted pair is cached.
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang, with the shape<1 boost.
  double gamma(double shape);

  // Beta(a, b) as a ratio of gammas.
  double beta(double a, double b);

  // Three distinct indices from [0, n), returned sorted ascending: a
  // uniform draw from all unordered triples. n must be >= 3.
  std::array<std::uint32_t, 3> distinct_triple(std::uint64_t n);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace sgt

#endif  // SGTEST_RNG_HPP
