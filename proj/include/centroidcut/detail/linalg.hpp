#pragma once

// Small dense linear algebra over an exact field (Rational) or double.
// Matrices are row-major vectors of rows; sizes are at most a few dozen.

#include <cmath>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "centroidcut/rational.hpp"

namespace centroidcut::detail {

template <class Scalar>
using Matrix = std::vector<std::vector<Scalar>>;

template <class Scalar>
bool is_zero(const Scalar& x) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return x == 0.0;
  } else {
    return x.is_zero();
  }
}

template <class Scalar>
double magnitude(const Scalar& x) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return std::fabs(x);
  } else {
    return x.is_zero() ? 0.0 : 1.0;
  }
}

/// Row-reduces `m` in place to reduced row echelon form; returns pivot columns.
/// For doubles the pivot is the largest magnitude entry and entries below
/// `eps` count as zero.
template <class Scalar>
std::vector<std::size_t> row_reduce(Matrix<Scalar>& m, double eps = 0.0) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    double best_mag = eps;
    for (std::size_t i = r; i < rows; ++i) {
      const double mag = magnitude(m[i][c]);
      if (mag > best_mag) {
        best = i;
        best_mag = mag;
        if constexpr (!std::is_floating_point_v<Scalar>) break;
      }
    }
    if (best == rows) continue;
    std::swap(m[r], m[best]);
    const Scalar inv = Scalar(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      const Scalar factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Scalar>
std::size_t rank(Matrix<Scalar> m, double eps = 0.0) {
  return row_reduce(m, eps).size();
}

/// Determinant of a square matrix by Gaussian elimination.
template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const std::size_t n = m.size();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    double best_mag = 0.0;
    for (std::size_t i = c; i < n; ++i) {
      const double mag = magnitude(m[i][c]);
      if (mag > best_mag) {
        best = i;
        best_mag = mag;
        if constexpr (!std::is_floating_point_v<Scalar>) break;
      }
    }
    if (best == n) return Scalar(0);
    if (best != c) {
      std::swap(m[best], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const Scalar inv = Scalar(1) / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      const Scalar factor = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= factor * m[c][j];
    }
  }
  return det;
}

/// Basis of the right null space of an r x n matrix (r may be 0).
template <class Scalar>
std::vector<std::vector<Scalar>> null_space(Matrix<Scalar> m, std::size_t cols) {
  std::vector<std::size_t> pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Affine dimension of a point set (-1 for an empty set).
template <class Scalar>
int affine_dimension(const std::vector<const std::vector<Scalar>*>& points) {
  if (points.empty()) return -1;
  Matrix<Scalar> diffs;
  diffs.reserve(points.size() - 1);
  const auto& base = *points.front();
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Scalar> d(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) d[k] = (*points[i])[k] - base[k];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(rank(std::move(diffs)));
}

inline Rational factorial(unsigned n) {
  Rational f(1);
  for (unsigned i = 2; i <= n; ++i) f *= Rational(static_cast<long>(i));
  return f;
}

}  // namespace centroidcut::detail
