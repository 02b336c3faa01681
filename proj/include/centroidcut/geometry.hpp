#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "centroidcut/rational.hpp"

namespace centroidcut {

/// Default cap on the ambient dimension. Facet enumeration is C(m, n) in the
/// number of points, so larger dimensions are refused unless the
/// CENTROIDCUT_MAXDIM environment variable raises the cap.
inline constexpr std::size_t kDefaultMaxDimension = 6;

std::size_t max_dimension();

/// n+1 affinely independent points in R^n.
class Simplex {
 public:
  explicit Simplex(std::vector<Point> vertices);

  [[nodiscard]] std::size_t dim() const { return vertices_.size() - 1; }
  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  /// det(v_1 - v_0, ..., v_n - v_0) / n!
  [[nodiscard]] Rational signed_volume() const;
  [[nodiscard]] Rational volume() const { return abs(signed_volume()); }
  [[nodiscard]] Point centroid() const;

 private:
  std::vector<Point> vertices_;
};

/// Outward facet inequality normal . x <= offset. The normal is a primitive
/// integer vector, so two facets are equal iff their normals are equal.
struct Facet {
  Vector normal;
  Rational offset;
  std::vector<std::size_t> vertices;  // indices into Polytope::vertices()
};

/// One simplex of the cached triangulation.
struct Cell {
  std::vector<std::size_t> vertices;  // n+1 indices into Polytope::vertices()
  Rational volume;
};

enum class Location { kInterior, kBoundary, kOutside };

/// Full-dimensional convex polytope in V-representation with exact
/// rational coordinates. Facets, edges, the fan triangulation, volume and
/// centroid are computed once at construction; instances are immutable.
class Polytope {
 public:
  /// Convex hull of a finite point set. Throws DegenerateInput when the
  /// points do not span R^n and DimensionTooLarge above max_dimension().
  static Polytope hull(std::span<const Point> points);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<Facet>& facets() const { return facets_; }
  [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<Cell>& triangulation() const { return cells_; }
  [[nodiscard]] const Rational& volume() const { return volume_; }
  [[nodiscard]] const Point& centroid() const { return centroid_; }

  [[nodiscard]] Simplex cell_simplex(std::size_t cell) const;
  [[nodiscard]] Location locate(const Point& x) const;

 private:
  Polytope() = default;

  std::size_t dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<Cell> cells_;
  Rational volume_;
  Point centroid_;
};

/// convex_hull entry point.
inline Polytope convex_hull(std::span<const Point> points) { return Polytope::hull(points); }

/// Image of K under x -> A x + b (A must be invertible).
Polytope affine_image(const Polytope& body, const std::vector<Vector>& matrix, const Vector& shift);

}  // namespace centroidcut
