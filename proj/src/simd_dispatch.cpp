#include <cstdlib>
#include <cstring>
#include <string>

#include "sgtest/errors.hpp"
#include "sgtest/simd.hpp"

namespace sgt::simd {

namespace {

bool cpu_has_avx2() {
#if defined(SGTEST_BUILD_AVX2)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Level detect_level() {
  if (const char* env = std::getenv("SUBGRAPH_TEST_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Level::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!cpu_has_avx2()) {
        throw BadParameter("SUBGRAPH_TEST_SIMD=avx2 but AVX2 is unavailable");
      }
      return Level::avx2;
    }
    if (std::strcmp(env, "auto") != 0) {
      throw BadParameter(std::string("unknown SUBGRAPH_TEST_SIMD value: ") + env);
    }
  }
  return cpu_has_avx2() ? Level::avx2 : Level::scalar;
}

Level& level_slot() {
  static Level level = detect_level();
  return level;
}

}  // namespace

const char* level_name(Level level) {
  switch (level) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
  }
  return "unknown";
}

bool level_supported(Level level) {
  if (level == Level::scalar) return true;
  return cpu_has_avx2();
}

Level active_level() { return level_slot(); }

void force_level(Level level) {
  if (!level_supported(level)) {
    throw BadParameter(std::string("SIMD level not supported here: ") +
                       level_name(level));
  }
  level_slot() = level;
}

std::size_t intersect_count(std::span<const std::uint32_t> a,
                            std::span<const std::uint32_t> b) {
#if defined(SGTEST_BUILD_AVX2)
  if (active_level() == Level::avx2) {
    return detail::intersect_count_avx2(a.data(), a.size(), b.data(), b.size());
  }
#endif
  return detail::intersect_count_scalar(a.data(), a.size(), b.data(), b.size());
}

std::size_t bernoulli_select(const double* u, const double* p, std::size_t n,
                             std::uint32_t* out) {
#if defined(SGTEST_BUILD_AVX2)
  if (active_level() == Level::avx2) {
    return detail::bernoulli_select_avx2(u, p, n, out);
  }
#endif
  return detail::bernoulli_select_scalar(u, p, n, out);
}

}  // namespace sgt::simd
