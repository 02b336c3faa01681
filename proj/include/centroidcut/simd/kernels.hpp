#pragma once

// Floating-point inner loops with a scalar reference implementation and an
// AVX2/FMA variant. The variant is picked once at startup from CPU
// features; CENTROIDCUT_SIMD=scalar forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace centroidcut::simd {

enum class Level { kScalar, kAvx2 };

std::string_view to_string(Level level);
Level active_level();
bool level_available(Level level);

struct PowerIntegrals {
  double mass = 0.0;    // ∫ h(t)^p dt
  double moment = 0.0;  // ∫ t h(t)^p dt
};

/// Integrals of h^p for the piecewise-linear h through (t[i], h[i]), exact
/// per segment up to rounding (Bernstein-form closed expressions).
PowerIntegrals integrate_power(std::span<const double> t, std::span<const double> h, unsigned power);
PowerIntegrals integrate_power(std::span<const double> t, std::span<const double> h, unsigned power, Level level);

/// out[i] = sum_k columns[k][i] * direction[k], for structure-of-arrays points.
void project(std::span<const double* const> columns, std::span<const double> direction, std::span<double> out);
void project(std::span<const double* const> columns, std::span<const double> direction, std::span<double> out,
             Level level);

namespace scalar {
PowerIntegrals integrate_power(const double* t, const double* h, std::size_t knots, unsigned power);
void project(const double* const* columns, std::size_t dim, const double* direction, double* out, std::size_t count);
}  // namespace scalar

namespace avx2 {
PowerIntegrals integrate_power(const double* t, const double* h, std::size_t knots, unsigned power);
void project(const double* const* columns, std::size_t dim, const double* direction, double* out, std::size_t count);
}  // namespace avx2

}  // namespace centroidcut::simd
