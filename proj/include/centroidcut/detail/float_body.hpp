#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "centroidcut/geometry.hpp"

namespace centroidcut::detail {

/// Double-precision copy of a polytope's triangulation for fast, inexact
/// cut-volume evaluation during direction and point searches.
class FloatBody {
 public:
  explicit FloatBody(const Polytope& body);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] double volume() const { return volume_; }
  [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }

  /// vol(K ∩ {x.θ <= t})
  [[nodiscard]] double cumulative(std::span<const double> direction, double t) const;
  /// Larger over smaller part of the split through x orthogonal to θ
  /// (+inf if one part is empty).
  [[nodiscard]] double ratio(std::span<const double> x, std::span<const double> direction) const;
  /// Smallest facet slack (offset - normal.x) / |normal|; positive inside.
  [[nodiscard]] double interior_margin(std::span<const double> x) const;

 private:
  std::size_t dim_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<double>> columns_;  // columns_[k][i] = coordinate k of vertex i
  std::vector<const double*> column_ptrs_;
  std::vector<std::size_t> cell_vertices_;  // (dim+1) per cell
  std::vector<double> cell_volumes_;
  std::vector<double> facet_normals_;  // unit normals, dim per facet
  std::vector<double> facet_offsets_;
  double volume_ = 0.0;
};

}  // namespace centroidcut::detail
