#include "centroidcut/detail/float_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "centroidcut/detail/slab.hpp"
#include "centroidcut/simd/kernels.hpp"

namespace centroidcut::detail {

FloatBody::FloatBody(const Polytope& body) : dim_(body.dim()), vertex_count_(body.vertices().size()) {
  columns_.assign(dim_, std::vector<double>(vertex_count_));
  for (std::size_t i = 0; i < vertex_count_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) columns_[k][i] = body.vertices()[i][k].to_double();
  for (const auto& c : columns_) column_ptrs_.push_back(c.data());
  for (const auto& cell : body.triangulation()) {
    cell_vertices_.insert(cell_vertices_.end(), cell.vertices.begin(), cell.vertices.end());
    cell_volumes_.push_back(cell.volume.to_double());
  }
  for (const auto& f : body.facets()) {
    const auto normal = to_doubles(f.normal);
    double norm = 0.0;
    for (double x : normal) norm += x * x;
    norm = std::sqrt(norm);
    for (double x : normal) facet_normals_.push_back(x / norm);
    facet_offsets_.push_back(f.offset.to_double() / norm);
  }
  volume_ = body.volume().to_double();
}

double FloatBody::cumulative(std::span<const double> direction, double t) const {
  thread_local std::vector<double> proj;
  proj.resize(vertex_count_);
  simd::project(column_ptrs_, direction, proj);
  const std::size_t width = dim_ + 1;
  double total = 0.0;
  double s[32];
  for (std::size_t c = 0; c < cell_volumes_.size(); ++c) {
    const std::size_t* idx = &cell_vertices_[c * width];
    double lo = proj[idx[0]];
    double hi = lo;
    for (std::size_t j = 0; j < width; ++j) {
      s[j] = proj[idx[j]];
      lo = std::min(lo, s[j]);
      hi = std::max(hi, s[j]);
    }
    if (t < lo) continue;
    if (t >= hi) {
      total += cell_volumes_[c];
      continue;
    }
    const std::uint32_t mask = (1u << width) - 1;
    total += cell_volumes_[c] * slab_fraction<double>(std::span<const double>(s, width), mask, t, false);
  }
  return total;
}

double FloatBody::ratio(std::span<const double> x, std::span<const double> direction) const {
  double t = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) t += x[k] * direction[k];
  const double lower = cumulative(direction, t);
  const double upper = volume_ - lower;
  const double small = std::min(lower, upper);
  if (!(small > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(lower, upper) / small;
}

double FloatBody::interior_margin(std::span<const double> x) const {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < facet_offsets_.size(); ++f) {
    double v = facet_offsets_[f];
    for (std::size_t k = 0; k < dim_; ++k) v -= facet_normals_[f * dim_ + k] * x[k];
    margin = std::min(margin, v);
  }
  return margin;
}

}  // namespace centroidcut::detail
