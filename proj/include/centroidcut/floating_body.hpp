#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/geometry.hpp"
#include "centroidcut/slicing.hpp"

namespace centroidcut {

/// Bracket [t_lo, t_hi] around the level t with vol(K ∩ {x.θ >= t}) = δ vol(K):
/// the cap above t_lo holds at least δ vol(K), the cap above t_hi at most.
struct CutDepth {
  Rational t_lo;
  Rational t_hi;

  [[nodiscard]] bool exact() const { return t_lo == t_hi; }
};

/// Throws BadDelta unless 0 < δ <= 1/2. Bracket width is at most
/// 2^-64 times the support width along θ; exact roots are returned as
/// degenerate brackets.
CutDepth cut_depth(const Polytope& body, const Vector& direction, const Rational& delta);
CutDepth cut_depth(const DirectionalSweep& sweep, const Rational& delta);

struct DepthHalfspace {
  Vector theta;
  CutDepth depth;

  /// Outer side: x.θ <= t_hi.
  [[nodiscard]] bool contains(const Point& x) const { return dot(theta, x) <= depth.t_hi; }
};

struct FloatingBodyApprox {
  Rational delta;
  std::size_t dim = 0;
  std::vector<DepthHalfspace> halfspaces;

  [[nodiscard]] std::size_t direction_count() const { return halfspaces.size(); }
};

enum class DirectionSet {
  kAxes,    // ±e_i
  kFacets,  // inward facet normals: caps on the far side from each facet
  kFull,    // ±e_i, ±facet normals, then seeded random directions up to N
};

std::vector<Vector> floating_directions(const Polytope& body, DirectionSet set, std::size_t count,
                                        std::uint64_t seed);

FloatingBodyApprox floating_body_approx(const Polytope& body, const Rational& delta,
                                        const std::vector<Vector>& directions, std::size_t threads = 1);
/// Throws BadSpec when set == kFull and count < 2n.
FloatingBodyApprox floating_body_approx(const Polytope& body, const Rational& delta, std::size_t count,
                                        std::uint64_t seed, DirectionSet set = DirectionSet::kFull,
                                        std::size_t threads = 1);

bool contains_point(const FloatingBodyApprox& approx, const Point& x);

struct Feasibility {
  bool nonempty = false;
  std::optional<Point> witness;
};

/// Exact feasibility of {x : a_i.x <= b_i}: Fourier-Motzkin elimination,
/// falling back to an exact simplex when elimination grows too large.
Feasibility solve_halfspaces(const std::vector<Halfspace>& system, std::size_t dim,
                             const std::optional<Point>& hint = std::nullopt);

/// Nonemptiness of the outer approximation; tries `hint` before eliminating.
Feasibility is_nonempty(const FloatingBodyApprox& approx, const std::optional<Point>& hint = std::nullopt);

struct PhiInterval {
  double lo = 0.0;
  double hi = 0.5;
};

/// lo from the centroid cut ratio, hi from bisection over δ on the
/// nonemptiness of the outer approximation with `count` directions.
PhiInterval phi_estimate(const Polytope& body, const SearchConfig& config, std::size_t count = 64,
                         DirectionSet set = DirectionSet::kFull, int bisection_steps = 20);

}  // namespace centroidcut
