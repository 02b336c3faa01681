#include "centroidcut/simd/kernels.hpp"

namespace centroidcut::simd::scalar {

PowerIntegrals integrate_power(const double* t, const double* h, std::size_t knots, unsigned power) {
  PowerIntegrals out;
  if (knots < 2) return out;
  const double p1 = power + 1.0;
  const double p12 = p1 * (power + 2.0);
  for (std::size_t i = 0; i + 1 < knots; ++i) {
    const double h0 = h[i];
    const double h1 = h[i + 1];
    const double dt = t[i + 1] - t[i];
    // sum_j h0^{p-j} h1^j and sum_j (j+1) h0^{p-j} h1^j by Horner in h0.
    double s = 1.0;
    double s1 = 1.0;
    double h1k = 1.0;
    for (unsigned k = 1; k <= power; ++k) {
      h1k *= h1;
      s = s * h0 + h1k;
      s1 = s1 * h0 + (k + 1.0) * h1k;
    }
    const double mass = dt * s / p1;
    out.mass += mass;
    out.moment += t[i] * mass + dt * dt * s1 / p12;
  }
  return out;
}

void project(const double* const* columns, std::size_t dim, const double* direction, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) acc += columns[k][i] * direction[k];
    out[i] = acc;
  }
}

}  // namespace centroidcut::simd::scalar
