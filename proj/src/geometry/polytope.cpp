#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

#include "centroidcut/detail/linalg.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/geometry.hpp"

namespace centroidcut {

std::size_t max_dimension() {
  if (const char* env = std::getenv("CENTROIDCUT_MAXDIM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxDimension;
}

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorCode::kDegenerateInput, "simplex without vertices");
  const std::size_t n = vertices_.front().size();
  if (vertices_.size() != n + 1)
    throw Error(ErrorCode::kDimensionMismatch, "simplex in R^" + std::to_string(n) + " needs n+1 vertices");
  for (const auto& v : vertices_)
    if (v.size() != n) throw Error(ErrorCode::kDimensionMismatch, "simplex vertices of mixed dimension");
}

Rational Simplex::signed_volume() const {
  const std::size_t n = dim();
  detail::Matrix<Rational> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m[i][k] = vertices_[i + 1][k] - vertices_[0][k];
  return detail::determinant(std::move(m)) / detail::factorial(static_cast<unsigned>(n));
}

Point Simplex::centroid() const {
  Point c(dim(), Rational(0));
  for (const auto& v : vertices_)
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += v[k];
  const Rational inv(1, static_cast<long>(vertices_.size()));
  for (auto& x : c) x *= inv;
  return c;
}

namespace {

struct VectorLess {
  bool operator()(const Vector& a, const Vector& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

std::size_t normal_rank(const std::vector<const Facet*>& facets, std::size_t n) {
  if (facets.empty()) return 0;
  detail::Matrix<Rational> m;
  m.reserve(facets.size());
  for (const Facet* f : facets) m.push_back(f->normal);
  (void)n;
  return detail::rank(std::move(m));
}

std::vector<std::size_t> sorted_intersection(const std::vector<std::size_t>& a,
                                             const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class FanTriangulator {
 public:
  FanTriangulator(const std::vector<Point>& vertices, const std::vector<Facet>& facets)
      : vertices_(vertices), facets_(facets) {}

  // Fan from the lowest-index vertex of `face` over the triangulated
  // subfaces that avoid it. `face` is sorted and has affine dimension d.
  std::vector<std::vector<std::size_t>> run(const std::vector<std::size_t>& face, std::size_t d) {
    if (face.size() == d + 1) return {face};
    const std::size_t apex = face.front();
    std::vector<std::vector<std::size_t>> out;
    for (const auto& sub : subfaces(face, d)) {
      if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
      for (auto& simplex : run(sub, d - 1)) {
        simplex.insert(simplex.begin(), apex);
        out.push_back(std::move(simplex));
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<std::size_t>> subfaces(const std::vector<std::size_t>& face, std::size_t d) {
    std::set<std::vector<std::size_t>> found;
    for (const auto& facet : facets_) {
      auto sub = sorted_intersection(face, facet.vertices);
      if (sub.size() < d || sub.size() == face.size()) continue;
      if (found.count(sub)) continue;
      std::vector<const Point*> pts;
      pts.reserve(sub.size());
      for (auto i : sub) pts.push_back(&vertices_[i]);
      if (detail::affine_dimension<Rational>(pts) == static_cast<int>(d) - 1) found.insert(std::move(sub));
    }
    return {found.begin(), found.end()};
  }

  const std::vector<Point>& vertices_;
  const std::vector<Facet>& facets_;
};

// Floating-point screen for the facet search: true only when the plane
// through the chosen points has points strictly on both sides by a wide
// margin, so the exact test would reject it too.
bool clearly_not_facet(const std::vector<std::vector<double>>& pts, const std::vector<std::size_t>& combo) {
  const std::size_t n = combo.size();
  const auto& p0 = pts[combo[0]];
  std::vector<std::vector<double>> a(n - 1, std::vector<double>(n));
  double scale = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      a[i - 1][k] = pts[combo[i]][k] - p0[k];
      scale = std::max(scale, std::fabs(a[i - 1][k]));
    }
  if (scale == 0.0) return false;
  // Row-reduce with partial pivoting; one free column gives the normal.
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n - 1; ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < n - 1; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[best][col])) best = r;
    if (std::fabs(a[best][col]) < 1e-9 * scale) continue;
    std::swap(a[row], a[best]);
    for (std::size_t r = 0; r < n - 1; ++r) {
      if (r == row) continue;
      const double f = a[r][col] / a[row][col];
      for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  if (row != n - 1) return false;
  std::size_t free_col = 0;
  while (std::find(pivot_cols.begin(), pivot_cols.end(), free_col) != pivot_cols.end()) ++free_col;
  std::vector<double> normal(n, 0.0);
  normal[free_col] = 1.0;
  for (std::size_t r = 0; r < n - 1; ++r) normal[pivot_cols[r]] = -a[r][free_col] / a[r][pivot_cols[r]];
  double norm = 0.0;
  for (double x : normal) norm = std::max(norm, std::fabs(x));
  const double tol = 1e-7 * norm * scale;
  bool pos = false;
  bool neg = false;
  for (const auto& q : pts) {
    double v = 0.0;
    for (std::size_t k = 0; k < n; ++k) v += normal[k] * (q[k] - p0[k]);
    pos = pos || v > tol;
    neg = neg || v < -tol;
    if (pos && neg) return true;
  }
  return false;
}

}  // namespace

Polytope Polytope::hull(std::span<const Point> input) {
  if (input.empty()) throw Error(ErrorCode::kDegenerateInput, "no points");
  const std::size_t n = input.front().size();
  if (n == 0) throw Error(ErrorCode::kDegenerateInput, "zero-dimensional points");
  if (n > max_dimension())
    throw Error(ErrorCode::kDimensionTooLarge,
                "dimension " + std::to_string(n) + " exceeds cap " + std::to_string(max_dimension()));
  for (const auto& p : input)
    if (p.size() != n) throw Error(ErrorCode::kDimensionMismatch, "points of mixed dimension");

  // Deduplicate, keeping first occurrences in input order.
  std::vector<Point> points;
  {
    std::set<Vector, VectorLess> seen;
    for (const auto& p : input)
      if (seen.insert(p).second) points.push_back(p);
  }
  const std::size_t m = points.size();
  if (m < n + 1) throw Error(ErrorCode::kDegenerateInput, "fewer than n+1 distinct points");
  {
    std::vector<const Point*> ptrs;
    for (const auto& p : points) ptrs.push_back(&p);
    if (detail::affine_dimension<Rational>(ptrs) != static_cast<int>(n))
      throw Error(ErrorCode::kDegenerateInput, "points lie in a proper affine subspace");
  }

  // Brute-force facet enumeration over n-subsets with a one-sidedness test.
  std::map<Vector, Rational, VectorLess> facet_planes;
  std::vector<std::size_t> combo(n);
  for (std::size_t i = 0; i < n; ++i) combo[i] = i;
  std::vector<std::vector<double>> approx;
  approx.reserve(m);
  std::vector<std::vector<char>> on_plane;
  for (const auto& p : points) approx.push_back(to_doubles(p));
  while (true) {
    if (clearly_not_facet(approx, combo)) goto next;
    // Subsets of an already found facet add nothing.
    for (const auto& on : on_plane)
      if (std::all_of(combo.begin(), combo.end(), [&](std::size_t i) { return on[i] != 0; })) goto next;
    {
    detail::Matrix<Rational> diffs;
    diffs.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) diffs.push_back(points[combo[i]] - points[combo[0]]);
    auto basis = detail::null_space(std::move(diffs), n);
    if (basis.size() == 1) {
      Vector normal = primitive(basis.front());
      const Rational offset = dot(normal, points[combo[0]]);
      bool pos = false;
      bool neg = false;
      for (std::size_t j = 0; j < m && !(pos && neg); ++j) {
        const int s = (dot(normal, points[j]) - offset).sign();
        pos = pos || s > 0;
        neg = neg || s < 0;
      }
      if (!(pos && neg)) {
        if (pos) normal = scaled(normal, Rational(-1));
        Rational off = dot(normal, points[combo[0]]);
        std::vector<char> on(m);
        for (std::size_t j = 0; j < m; ++j) on[j] = dot(normal, points[j]) == off;
        on_plane.push_back(std::move(on));
        facet_planes.emplace(std::move(normal), std::move(off));
      }
    }
    }
  next:
    // Next combination in lexicographic order.
    std::size_t k = n;
    while (k > 0 && combo[k - 1] == m - n + (k - 1)) --k;
    if (k == 0) break;
    ++combo[k - 1];
    for (std::size_t j = k; j < n; ++j) combo[j] = combo[j - 1] + 1;
  }

  std::vector<Facet> planes;
  planes.reserve(facet_planes.size());
  for (auto& [normal, offset] : facet_planes) planes.push_back(Facet{normal, offset, {}});

  // A point is a vertex iff the normals of the facets through it span R^n.
  Polytope out;
  out.dim_ = n;
  for (const auto& p : points) {
    std::vector<const Facet*> incident;
    for (const auto& f : planes)
      if (dot(f.normal, p) == f.offset) incident.push_back(&f);
    if (incident.size() >= n && normal_rank(incident, n) == n) out.vertices_.push_back(p);
  }
  for (auto& f : planes) {
    for (std::size_t i = 0; i < out.vertices_.size(); ++i)
      if (dot(f.normal, out.vertices_[i]) == f.offset) f.vertices.push_back(i);
  }
  out.facets_ = std::move(planes);

  const std::size_t nv = out.vertices_.size();
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = i + 1; j < nv; ++j) {
      std::vector<const Facet*> common;
      for (const auto& f : out.facets_)
        if (std::binary_search(f.vertices.begin(), f.vertices.end(), i) &&
            std::binary_search(f.vertices.begin(), f.vertices.end(), j))
          common.push_back(&f);
      if (common.size() + 1 < n) continue;
      if (normal_rank(common, n) == n - 1) out.edges_.emplace_back(i, j);
    }
  }

  std::vector<std::size_t> all(nv);
  for (std::size_t i = 0; i < nv; ++i) all[i] = i;
  FanTriangulator fan(out.vertices_, out.facets_);
  mpq_class total;
  Point weighted(n, Rational(0));
  for (auto& idx : fan.run(all, n)) {
    std::vector<Point> verts;
    verts.reserve(idx.size());
    for (auto i : idx) verts.push_back(out.vertices_[i]);
    Simplex s(std::move(verts));
    Rational vol = s.volume();
    if (vol.is_zero()) continue;
    const Point c = s.centroid();
    for (std::size_t k = 0; k < n; ++k) weighted[k] += vol * c[k];
    total += vol.raw();
    out.cells_.push_back(Cell{std::move(idx), std::move(vol)});
  }
  out.volume_ = Rational(total);
  if (out.volume_.is_zero()) throw Error(ErrorCode::kDegenerateInput, "zero volume");
  out.centroid_ = scaled(weighted, Rational(1) / out.volume_);
  return out;
}

Simplex Polytope::cell_simplex(std::size_t cell) const {
  std::vector<Point> verts;
  for (auto i : cells_.at(cell).vertices) verts.push_back(vertices_[i]);
  return Simplex(std::move(verts));
}

Location Polytope::locate(const Point& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "point dimension does not match body");
  bool boundary = false;
  for (const auto& f : facets_) {
    const int s = (dot(f.normal, x) - f.offset).sign();
    if (s > 0) return Location::kOutside;
    if (s == 0) boundary = true;
  }
  return boundary ? Location::kBoundary : Location::kInterior;
}

Polytope affine_image(const Polytope& body, const std::vector<Vector>& matrix, const Vector& shift) {
  std::vector<Point> image;
  image.reserve(body.vertices().size());
  for (const auto& v : body.vertices()) {
    Point y(matrix.size());
    for (std::size_t r = 0; r < matrix.size(); ++r) y[r] = dot(matrix[r], v) + shift[r];
    image.push_back(std::move(y));
  }
  return Polytope::hull(image);
}

}  // namespace centroidcut
