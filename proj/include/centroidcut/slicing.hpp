#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "centroidcut/geometry.hpp"

namespace centroidcut {

/// {x : normal . x <= offset}
struct Halfspace {
  Vector normal;
  Rational offset;

  [[nodiscard]] bool contains(const Point& x) const { return dot(normal, x) <= offset; }
};

/// Triangulates S ∩ h. Zero-volume pieces are dropped, so the result is
/// empty iff the intersection has zero n-volume.
std::vector<Simplex> clip_simplex(const Simplex& simplex, const Halfspace& halfspace);

enum class Side { kLeft, kRight };

/// Exact volume queries of one body along one direction θ. The vertex
/// projections x.θ are computed once; queries take a level t in the same
/// (unnormalized) units. Holds a reference to `body`, which must outlive it.
class DirectionalSweep {
 public:
  DirectionalSweep(const Polytope& body, Vector direction);

  [[nodiscard]] const Polytope& body() const { return *body_; }
  [[nodiscard]] const Vector& direction() const { return direction_; }
  [[nodiscard]] const std::vector<Rational>& projections() const { return projections_; }
  [[nodiscard]] const Rational& min_projection() const { return min_; }
  [[nodiscard]] const Rational& max_projection() const { return max_; }
  /// Sorted distinct vertex projections; the section function is a
  /// polynomial of degree n-1 between consecutive entries.
  [[nodiscard]] std::vector<Rational> breakpoints() const;

  /// vol(K ∩ {x.θ <= t})
  [[nodiscard]] Rational cumulative(const Rational& t) const;
  /// vol(K ∩ {x.θ >= t})
  [[nodiscard]] Rational upper(const Rational& t) const { return body_->volume() - cumulative(t); }
  /// One-sided derivative of cumulative() at t.
  [[nodiscard]] Rational density(const Rational& t, Side side) const;
  /// Closed-slice section value: the larger one-sided limit, so the
  /// support endpoints report the area of the face lying there.
  [[nodiscard]] Rational section(const Rational& t) const;

 private:
  const Polytope* body_;
  Vector direction_;
  std::vector<Rational> projections_;
  std::vector<Rational> cell_min_;
  std::vector<Rational> cell_max_;
  Rational min_;
  Rational max_;
};

/// vol(K ∩ {x.θ <= t}), exact.
Rational cumulative_volume(const Polytope& body, const Vector& direction, const Rational& t);

/// Section function f(t) = vol_{n-1}(K ∩ {x.θ = t}) / |θ|, so that the
/// integral of f over t is vol(K). Exact; 0 outside the support.
Rational section_value(const Polytope& body, const Vector& direction, const Rational& t);

/// Same quantity computed from the slice polytope itself: edge/hyperplane
/// intersections, projected along a coordinate axis, hulled in R^{n-1}.
Rational slice_section_value(const Polytope& body, const Vector& direction, const Rational& t);

struct SupportInterval {
  Rational a;  // ref.θ - min vertex projection
  Rational b;  // max vertex projection - ref.θ
};

/// Throws RefNotInterior unless `ref` is an interior point.
SupportInterval support_interval(const Polytope& body, const Vector& direction, const Point& ref);

struct ProfileSample {
  Rational t;  // offset from ref.θ
  Rational f;
  double h = 0.0;  // f^{1/(n-1)}; equals f when n == 1
};

struct SectionProfile {
  Vector direction;
  Point reference;
  Rational a;
  Rational b;
  std::size_t dim = 0;
  std::vector<ProfileSample> samples;

  /// Largest amount by which h falls below the chord over any grid triple
  /// t1 < t2 < t3 (0 when h is concave on the grid).
  [[nodiscard]] double max_concavity_violation() const;
  /// Columns t,f,h as decimal strings with `digits` fractional digits.
  [[nodiscard]] std::string to_csv(int digits = 12) const;
};

/// Samples the section function on a uniform rational grid of `grid_size`
/// points over [-a, b] around the centroid.
SectionProfile profile(const Polytope& body, const Vector& direction, std::size_t grid_size);

struct ExactMoments {
  Rational mass;    // ∫ f dt
  Rational moment;  // ∫ (t - ref.θ) f dt
};

/// Integrates the section function piece by piece with closed Newton-Cotes
/// rules of degree n, which are exact on each polynomial piece.
ExactMoments exact_moments(const Polytope& body, const Vector& direction, const Point& ref);

}  // namespace centroidcut
