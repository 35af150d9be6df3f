#include "sgtest/rng.hpp"

#include <cmath>

#include "sgtest/errors.hpp"

namespace sgt {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  // Expand the seed through SplitMix64 as recommended for xoshiro seeding.
  std::uint64_t sm = seed;
  for (auto& word : s_) {
    sm += 0x9E3779B97F4A7C15ull;
    word = mix64(sm);
  }
  // The all-zero state is the one fixed point of xoshiro; unreachable from
  // SplitMix64 expansion in practice, but cheap to rule out.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw BadParameter("next_below: n must be positive");
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t Rng::geometric_skip(double p) {
  // floor(log(1-U) / log(1-p)) with U in [0,1); log1p keeps small p exact.
  const double u = next_unit();
  const double num = std::log1p(-u);
  const double den = std::log1p(-p);
  const double skip = std::floor(num / den);
  if (skip >= 9.0e18) return static_cast<std::uint64_t>(9.0e18);
  return static_cast<std::uint64_t>(skip);
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * f;
  has_cached_normal_ = true;
  return u * f;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw BadParameter("gamma: shape must be positive");
  if (shape < 1.0) {
    double u = next_unit();
    while (u == 0.0) u = next_unit();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_unit();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

double Rng::beta(double a, double b) {
  for (;;) {
    const double x = gamma(a);
    const double y = gamma(b);
    if (x + y > 0.0) return x / (x + y);
  }
}

std::array<std::uint32_t, 3> Rng::distinct_triple(std::uint64_t n) {
  if (n < 3) throw BadParameter("distinct_triple: need n >= 3");
  const auto i = next_below(n);
  auto j = next_below(n - 1);
  if (j >= i) ++j;
  auto lo = i < j ? i : j;
  auto hi = i < j ? j : i;
  auto k = next_below(n - 2);
  if (k >= lo) ++k;
  if (k >= hi) ++k;
  std::uint64_t a = lo, b2 = hi, c2 = k;
  if (c2 < a) std::swap(a, c2);
  if (c2 < b2) std::swap(b2, c2);
  if (b2 < a) std::swap(a, b2);
  return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b2),
          static_cast<std::uint32_t>(c2)};
}

}  // namespace sgt
