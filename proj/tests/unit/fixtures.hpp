#pragma once

// Hand-built bodies for unit tests, independent of the generators module.

#include <random>
#include <vector>

#include "centroidcut/geometry.hpp"

namespace fixtures {

using centroidcut::Point;
using centroidcut::Polytope;
using centroidcut::Rational;

inline Rational q(long p, long d = 1) { return Rational(p, d); }

inline Polytope unit_cube(std::size_t n) {
  std::vector<Point> pts;
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    Point p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = Rational((mask >> k) & 1u ? 1 : 0);
    pts.push_back(p);
  }
  return Polytope::hull(pts);
}

inline Polytope standard_simplex(std::size_t n) {
  std::vector<Point> pts{Point(n, Rational(0))};
  for (std::size_t k = 0; k < n; ++k) {
    Point e(n, Rational(0));
    e[k] = Rational(1);
    pts.push_back(e);
  }
  return Polytope::hull(pts);
}

inline Polytope square_pyramid() {
  std::vector<Point> pts{{q(0), q(0), q(0)}, {q(1), q(0), q(0)}, {q(0), q(1), q(0)},
                         {q(1), q(1), q(0)}, {q(1, 2), q(1, 2), q(1)}};
  return Polytope::hull(pts);
}

/// Seeded points with dyadic coordinates in [-1, 1].
inline std::vector<Point> random_points(std::size_t n, std::size_t m, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coord(-64, 64);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < m; ++i) {
    Point p(n);
    for (auto& x : p) x = Rational(coord(rng), 64);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace fixtures
