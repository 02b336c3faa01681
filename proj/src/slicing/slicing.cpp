#include "centroidcut/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "centroidcut/detail/linalg.hpp"
#include "centroidcut/detail/slab.hpp"
#include "centroidcut/error.hpp"

namespace centroidcut {

namespace {

void require_direction(const Vector& direction, std::size_t n) {
  if (direction.size() != n) throw Error(ErrorCode::kDimensionMismatch, "direction length differs from body dimension");
  if (std::all_of(direction.begin(), direction.end(), [](const Rational& x) { return x.is_zero(); }))
    throw Error(ErrorCode::kBadSpec, "zero direction");
}

Point edge_point(const Point& from, const Point& to, const Rational& s_from, const Rational& s_to,
                 const Rational& t) {
  const Rational lambda = (t - s_from) / (s_to - s_from);
  Point p(from.size());
  for (std::size_t k = 0; k < from.size(); ++k) p[k] = from[k] + lambda * (to[k] - from[k]);
  return p;
}

// Monotone lattice paths from (0,0) to (rows-1, cols-1): the staircase
// triangulation of a product of two simplices.
void staircase(std::size_t rows, std::size_t cols, std::vector<std::pair<std::size_t, std::size_t>>& path,
               std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& out) {
  const auto [i, j] = path.back();
  if (i + 1 == rows && j + 1 == cols) {
    out.push_back(path);
    return;
  }
  if (i + 1 < rows) {
    path.emplace_back(i + 1, j);
    staircase(rows, cols, path, out);
    path.pop_back();
  }
  if (j + 1 < cols) {
    path.emplace_back(i, j + 1);
    staircase(rows, cols, path, out);
    path.pop_back();
  }
}

// Cone decomposition of S ∩ {s <= t}: from the first vertex b0 below the
// level, cone over the cut face (staircase-triangulated) and over the
// recursively clipped facet opposite b0.
std::vector<std::vector<Point>> clip_recursive(const std::vector<Point>& verts, const std::vector<Rational>& s,
                                               const Rational& t) {
  std::vector<std::size_t> below;
  std::vector<std::size_t> above;
  for (std::size_t i = 0; i < verts.size(); ++i) (s[i] <= t ? below : above).push_back(i);
  if (above.empty()) return {verts};
  if (below.empty()) return {};

  const std::size_t b0 = below.front();
  std::vector<std::vector<Point>> out;

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> paths;
  std::vector<std::pair<std::size_t, std::size_t>> path{{0, 0}};
  staircase(below.size(), above.size(), path, paths);
  for (const auto& p : paths) {
    std::vector<Point> piece{verts[b0]};
    for (const auto& [bi, aj] : p) {
      const std::size_t b = below[bi];
      const std::size_t a = above[aj];
      piece.push_back(edge_point(verts[b], verts[a], s[b], s[a], t));
    }
    out.push_back(std::move(piece));
  }

  std::vector<Point> rest_verts;
  std::vector<Rational> rest_s;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (i == b0) continue;
    rest_verts.push_back(verts[i]);
    rest_s.push_back(s[i]);
  }
  for (auto& piece : clip_recursive(rest_verts, rest_s, t)) {
    piece.insert(piece.begin(), verts[b0]);
    out.push_back(std::move(piece));
  }
  return out;
}

// Weights of the closed Newton-Cotes rule with nodes k/d, k = 0..d, on [0,1].
const std::vector<Rational>& newton_cotes_weights(std::size_t d) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<Rational>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  const std::size_t nodes = d + 1;
  detail::Matrix<Rational> system(nodes, std::vector<Rational>(nodes + 1));
  for (std::size_t j = 0; j < nodes; ++j) {
    for (std::size_t k = 0; k < nodes; ++k)
      system[j][k] = d == 0 ? Rational(1) : pow(Rational(static_cast<long>(k), static_cast<long>(d)), static_cast<unsigned>(j));
    system[j][nodes] = Rational(1, static_cast<long>(j + 1));
  }
  detail::row_reduce(system);
  std::vector<Rational> w(nodes);
  for (std::size_t k = 0; k < nodes; ++k) w[k] = system[k][nodes];
  return cache.emplace(d, std::move(w)).first->second;
}

}  // namespace

std::vector<Simplex> clip_simplex(const Simplex& simplex, const Halfspace& halfspace) {
  require_direction(halfspace.normal, simplex.dim());
  std::vector<Rational> s;
  s.reserve(simplex.vertices().size());
  for (const auto& v : simplex.vertices()) s.push_back(dot(halfspace.normal, v));
  std::vector<Simplex> out;
  for (auto& piece : clip_recursive(simplex.vertices(), s, halfspace.offset)) {
    Simplex candidate(std::move(piece));
    if (!candidate.signed_volume().is_zero()) out.push_back(std::move(candidate));
  }
  return out;
}

DirectionalSweep::DirectionalSweep(const Polytope& body, Vector direction)
    : body_(&body), direction_(std::move(direction)) {
  require_direction(direction_, body.dim());
  projections_.reserve(body.vertices().size());
  for (const auto& v : body.vertices()) projections_.push_back(dot(direction_, v));
  min_ = *std::min_element(projections_.begin(), projections_.end());
  max_ = *std::max_element(projections_.begin(), projections_.end());
  for (const auto& cell : body.triangulation()) {
    Rational lo = projections_[cell.vertices.front()];
    Rational hi = lo;
    for (auto i : cell.vertices) {
      lo = std::min(lo, projections_[i]);
      hi = std::max(hi, projections_[i]);
    }
    cell_min_.push_back(std::move(lo));
    cell_max_.push_back(std::move(hi));
  }
}

std::vector<Rational> DirectionalSweep::breakpoints() const {
  std::vector<Rational> out = projections_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational DirectionalSweep::cumulative(const Rational& t) const {
  if (t < min_) return Rational(0);
  if (t >= max_) return body_->volume();
  const auto& cells = body_->triangulation();
  mpq_class total;
  std::vector<Rational> s;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (t < cell_min_[c]) continue;
    if (t >= cell_max_[c]) {
      total += cells[c].volume.raw();
      continue;
    }
    s.clear();
    for (auto i : cells[c].vertices) s.push_back(projections_[i]);
    const std::uint32_t mask = (1u << s.size()) - 1;
    total += (cells[c].volume * detail::slab_fraction<Rational>(s, mask, t, false)).raw();
  }
  return Rational(total);
}

Rational DirectionalSweep::density(const Rational& t, Side side) const {
  const bool strict = side == Side::kLeft;
  const auto& cells = body_->triangulation();
  mpq_class total;
  std::vector<Rational> s;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (t < cell_min_[c] || t > cell_max_[c]) continue;
    s.clear();
    for (auto i : cells[c].vertices) s.push_back(projections_[i]);
    const std::uint32_t mask = (1u << s.size()) - 1;
    total += (cells[c].volume * detail::slab_density<Rational>(s, mask, t, strict)).raw();
  }
  return Rational(total);
}

Rational DirectionalSweep::section(const Rational& t) const {
  if (t < min_ || t > max_) return Rational(0);
  return std::max(density(t, Side::kLeft), density(t, Side::kRight));
}

Rational cumulative_volume(const Polytope& body, const Vector& direction, const Rational& t) {
  return DirectionalSweep(body, direction).cumulative(t);
}

Rational section_value(const Polytope& body, const Vector& direction, const Rational& t) {
  return DirectionalSweep(body, direction).section(t);
}

Rational slice_section_value(const Polytope& body, const Vector& direction, const Rational& t) {
  const std::size_t n = body.dim();
  require_direction(direction, n);
  const auto& verts = body.vertices();
  std::vector<Rational> s;
  for (const auto& v : verts) s.push_back(dot(direction, v));

  std::vector<Point> slice;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (s[i] == t) slice.push_back(verts[i]);
  for (const auto& [i, j] : body.edges()) {
    if ((s[i] < t && t < s[j]) || (s[j] < t && t < s[i])) slice.push_back(edge_point(verts[i], verts[j], s[i], s[j], t));
  }

  std::size_t axis = 0;
  while (direction[axis].is_zero()) ++axis;
  const Rational scale = abs(direction[axis]);
  if (n == 1) return slice.empty() ? Rational(0) : Rational(1) / scale;
  if (slice.size() < n) return Rational(0);

  std::vector<Point> chart;
  chart.reserve(slice.size());
  for (const auto& p : slice) {
    Point q;
    q.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k)
      if (k != axis) q.push_back(p[k]);
    chart.push_back(std::move(q));
  }
  std::vector<const Point*> ptrs;
  for (const auto& p : chart) ptrs.push_back(&p);
  if (detail::affine_dimension<Rational>(ptrs) < static_cast<int>(n) - 1) return Rational(0);
  return Polytope::hull(chart).volume() / scale;
}

SupportInterval support_interval(const Polytope& body, const Vector& direction, const Point& ref) {
  if (body.locate(ref) != Location::kInterior)
    throw Error(ErrorCode::kRefNotInterior, "reference point " + to_string(ref) + " is not interior");
  DirectionalSweep sweep(body, direction);
  const Rational r = dot(direction, ref);
  return SupportInterval{r - sweep.min_projection(), sweep.max_projection() - r};
}

double SectionProfile::max_concavity_violation() const {
  const std::size_t g = samples.size();
  std::vector<double> t(g);
  for (std::size_t i = 0; i < g; ++i) t[i] = samples[i].t.to_double();
  double worst = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t k = i + 2; k < g; ++k) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double w = (t[j] - t[i]) / (t[k] - t[i]);
        const double chord = (1.0 - w) * samples[i].h + w * samples[k].h;
        worst = std::max(worst, chord - samples[j].h);
      }
    }
  }
  return worst;
}

std::string SectionProfile::to_csv(int digits) const {
  std::ostringstream out;
  out << "t,f,h\n";
  for (const auto& s : samples) {
    out << s.t.to_decimal(digits) << ',' << s.f.to_decimal(digits) << ','
        << Rational::from_double(s.h).to_decimal(digits) << '\n';
  }
  return out.str();
}

SectionProfile profile(const Polytope& body, const Vector& direction, std::size_t grid_size) {
  if (grid_size < 3) throw Error(ErrorCode::kBadSpec, "profile grid needs at least 3 points");
  const Point& c = body.centroid();
  const SupportInterval support = support_interval(body, direction, c);
  DirectionalSweep sweep(body, direction);
  const Rational r = dot(direction, c);
  const Rational step = (support.a + support.b) / Rational(static_cast<long>(grid_size - 1));
  const std::size_t n = body.dim();

  SectionProfile out{direction, c, support.a, support.b, n, {}};
  out.samples.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    Rational t = -support.a + step * Rational(static_cast<long>(i));
    Rational f = sweep.section(r + t);
    const double fd = f.to_double();
    const double h = n <= 1 ? fd : (n == 2 ? fd : std::pow(fd, 1.0 / static_cast<double>(n - 1)));
    out.samples.push_back(ProfileSample{std::move(t), std::move(f), h});
  }
  return out;
}

ExactMoments exact_moments(const Polytope& body, const Vector& direction, const Point& ref) {
  DirectionalSweep sweep(body, direction);
  const Rational r = dot(direction, ref);
  const std::size_t n = body.dim();
  const auto& w = newton_cotes_weights(n);
  const auto bps = sweep.breakpoints();
  ExactMoments out{Rational(0), Rational(0)};
  for (std::size_t p = 0; p + 1 < bps.size(); ++p) {
    const Rational& lo = bps[p];
    const Rational width = bps[p + 1] - lo;
    Rational mass(0);
    Rational moment(0);
    for (std::size_t k = 0; k <= n; ++k) {
      const Rational x = lo + width * Rational(static_cast<long>(k), static_cast<long>(n));
      const Side side = k == n ? Side::kLeft : Side::kRight;
      const Rational f = sweep.density(x, side);
      mass += w[k] * f;
      moment += w[k] * (x - r) * f;
    }
    out.mass += width * mass;
    out.moment += width * moment;
  }
  return out;
}

}  // namespace centroidcut
