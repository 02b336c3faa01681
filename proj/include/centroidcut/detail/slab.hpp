#pragma once

// Volume fraction of a simplex below a level set of a linear functional,
// computed from the vertex projections alone.
//
// For vertex projections s_0..s_d and level t, P(V) is the probability that
// a uniform point of the simplex has projection <= t (or < t when `strict`).
// It satisfies, for any s_i <= t < s_j,
//
//   P(V) = [(t - s_i) P(V \ j) + (s_j - t) P(V \ i)] / (s_j - s_i)
//
// which is exact in rational arithmetic and needs no tie-breaking: the
// subsets shrink until one side of the level holds a single vertex, where
// the clipped region is a scaled copy of the simplex.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace centroidcut::detail {

template <class Scalar>
Scalar slab_fraction(std::span<const Scalar> s, std::uint32_t mask, const Scalar& t, bool strict) {
  std::uint32_t below = 0;
  std::uint32_t above = 0;
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    const bool is_below = strict ? (s[i] < t) : !(t < s[i]);
    (is_below ? below : above) |= (1u << i);
  }
  if (above == 0) return Scalar(1);
  if (below == 0) return Scalar(0);

  if (std::popcount(below) == 1) {
    const int b = std::countr_zero(below);
    Scalar prod(1);
    for (std::uint32_t rest = above; rest != 0; rest &= rest - 1) {
      const int a = std::countr_zero(rest);
      prod *= (t - s[b]) / (s[a] - s[b]);
    }
    return prod;
  }
  if (std::popcount(above) == 1) {
    const int a = std::countr_zero(above);
    Scalar prod(1);
    for (std::uint32_t rest = below; rest != 0; rest &= rest - 1) {
      const int b = std::countr_zero(rest);
      prod *= (s[a] - t) / (s[a] - s[b]);
    }
    return Scalar(1) - prod;
  }

  const int i = std::countr_zero(below);
  const int j = std::countr_zero(above);
  const Scalar without_j = slab_fraction(s, mask & ~(1u << j), t, strict);
  const Scalar without_i = slab_fraction(s, mask & ~(1u << i), t, strict);
  return ((t - s[i]) * without_j + (s[j] - t) * without_i) / (s[j] - s[i]);
}

/// d/dt of slab_fraction (a one-sided limit: right-sided when !strict,
/// left-sided when strict). Requires distinct extreme projections, which
/// holds for any full-dimensional simplex and nonzero direction.
template <class Scalar>
Scalar slab_density(std::span<const Scalar> s, std::uint32_t mask, const Scalar& t, bool strict) {
  int lo = -1;
  int hi = -1;
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    const int k = std::countr_zero(rest);
    if (lo < 0 || s[k] < s[lo]) lo = k;
    if (hi < 0 || s[hi] < s[k]) hi = k;
  }
  const int d = std::popcount(mask) - 1;
  if (strict ? !(s[lo] < t && !(s[hi] < t)) : !(!(t < s[lo]) && t < s[hi])) return Scalar(0);
  const Scalar without_hi = slab_fraction(s, mask & ~(1u << hi), t, strict);
  const Scalar without_lo = slab_fraction(s, mask & ~(1u << lo), t, strict);
  return Scalar(d) * (without_hi - without_lo) / (s[hi] - s[lo]);
}

}  // namespace centroidcut::detail
