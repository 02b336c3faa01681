#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "centroidcut/simd/kernels.hpp"

namespace centroidcut::simd {

std::string_view to_string(Level level) {
  switch (level) {
    case Level::kScalar: return "scalar";
    case Level::kAvx2: return "avx2";
  }
  return "unknown";
}

bool level_available(Level level) {
  switch (level) {
    case Level::kScalar: return true;
    case Level::kAvx2:
#if defined(CENTROIDCUT_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    {
      static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
      }();
      return supported;
    }
#else
      return false;
#endif
  }
  return false;
}

namespace {

Level detect() {
  if (const char* env = std::getenv("CENTROIDCUT_SIMD"); env != nullptr && std::strcmp(env, "scalar") == 0)
    return Level::kScalar;
  return level_available(Level::kAvx2) ? Level::kAvx2 : Level::kScalar;
}

void require(Level level) {
  if (!level_available(level)) throw std::runtime_error("SIMD level not available on this CPU");
}

}  // namespace

Level active_level() {
  static const Level level = detect();
  return level;
}

PowerIntegrals integrate_power(std::span<const double> t, std::span<const double> h, unsigned power, Level level) {
  if (t.size() != h.size()) throw std::invalid_argument("integrate_power: knot arrays differ in length");
  require(level);
#if defined(CENTROIDCUT_HAVE_AVX2)
  if (level == Level::kAvx2) return avx2::integrate_power(t.data(), h.data(), t.size(), power);
#endif
  return scalar::integrate_power(t.data(), h.data(), t.size(), power);
}

PowerIntegrals integrate_power(std::span<const double> t, std::span<const double> h, unsigned power) {
  return integrate_power(t, h, power, active_level());
}

void project(std::span<const double* const> columns, std::span<const double> direction, std::span<double> out,
             Level level) {
  if (columns.size() != direction.size()) throw std::invalid_argument("project: dimension mismatch");
  require(level);
#if defined(CENTROIDCUT_HAVE_AVX2)
  if (level == Level::kAvx2) {
    avx2::project(columns.data(), columns.size(), direction.data(), out.data(), out.size());
    return;
  }
#endif
  scalar::project(columns.data(), columns.size(), direction.data(), out.data(), out.size());
}

void project(std::span<const double* const> columns, std::span<const double> direction, std::span<double> out) {
  project(columns, direction, out, active_level());
}

}  // namespace centroidcut::simd
