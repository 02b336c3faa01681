#include "doctest.h"
#include "fixtures.hpp"

#include "centroidcut/detail/feasibility.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/floating_body.hpp"
#include "centroidcut/generators.hpp"

using namespace centroidcut;
using fixtures::q;

namespace {

Polytope square() { return fixtures::unit_cube(2); }

Vector e(std::size_t n, std::size_t k, long s = 1) {
  Vector v(n, q(0));
  v[k] = q(s);
  return v;
}

SearchConfig quick() {
  SearchConfig c;
  c.grid_directions = 200;
  c.multistart = 3;
  return c;
}

}  // namespace

TEST_CASE("cut depth examples") {
  auto d = cut_depth(square(), e(2, 0), q(1, 4));
  CHECK(d.exact());
  CHECK(d.t_lo == q(3, 4));
  d = cut_depth(square(), e(2, 0), q(1, 2));
  CHECK(d.t_lo == q(1, 2));
  d = cut_depth(fixtures::square_pyramid(), e(3, 2), q(27, 64));
  CHECK(d.exact());
  CHECK(d.t_lo == q(1, 4));
  CHECK_THROWS_AS(cut_depth(square(), e(2, 0), q(0)), Error);
  CHECK_THROWS_AS(cut_depth(square(), e(2, 0), q(3, 5)), Error);
  try {
    (void)cut_depth(square(), e(2, 0), q(-1, 5));
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kBadDelta);
  }
}

TEST_CASE("cut depth brackets are certified") {
  const auto body = Polytope::hull(fixtures::random_points(3, 11, 8));
  for (const auto& theta : floating_directions(body, DirectionSet::kFull, 16, 3)) {
    for (const Rational& delta : {q(1, 7), q(1, 3), q(27, 64), q(1, 2)}) {
      const DirectionalSweep sweep(body, theta);
      const auto d = cut_depth(sweep, delta);
      const Rational target = delta * body.volume();
      CHECK(sweep.upper(d.t_lo) >= target);
      CHECK(sweep.upper(d.t_hi) <= target);
      const Rational width = sweep.max_projection() - sweep.min_projection();
      CHECK((d.t_hi - d.t_lo) * pow(q(2), 64) <= width);
    }
  }
}

TEST_CASE("axis approximation of the square") {
  const auto f = floating_body_approx(square(), q(1, 4), 4, 1, DirectionSet::kAxes);
  REQUIRE(f.direction_count() == 4);
  for (const auto& h : f.halfspaces) {
    CHECK(h.depth.exact());
    // x <= 3/4 and -x <= -1/4
    CHECK(h.depth.t_hi == (dot(h.theta, Vector{q(1), q(1)}) > q(0) ? q(3, 4) : q(-1, 4)));
  }
  CHECK(contains_point(f, {q(1, 2), q(1, 2)}));
  CHECK_FALSE(contains_point(f, {q(9, 10), q(1, 2)}));
  CHECK(contains_point(f, {q(1, 4), q(3, 4)}));
  const auto ne = is_nonempty(f);
  CHECK(ne.nonempty);
  CHECK(*ne.witness == Point{q(1, 2), q(1, 2)});
  const auto half = floating_body_approx(square(), q(1, 2), 4, 1, DirectionSet::kAxes);
  const auto center = is_nonempty(half);
  CHECK(center.nonempty);
  CHECK(*center.witness == Point{q(1, 2), q(1, 2)});
  CHECK_THROWS_AS(contains_point(f, {q(1)}), Error);
  CHECK_THROWS_AS(floating_body_approx(square(), q(1, 4), 3, 1), Error);
}

TEST_CASE("simplex facet normals at delta_n pass through the centroid") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto s = fixtures::standard_simplex(n);
    const auto f = floating_body_approx(s, delta_n(n), n + 1, 1, DirectionSet::kFacets);
    CHECK(f.direction_count() == n + 1);
    for (const auto& h : f.halfspaces) {
      CHECK(h.depth.exact());
      CHECK(dot(h.theta, s.centroid()) == h.depth.t_lo);
    }
    const auto ne = is_nonempty(f);
    CHECK(ne.nonempty);
    CHECK(*ne.witness == s.centroid());
  }
}

TEST_CASE("direction sets") {
  const auto body = Polytope::hull(fixtures::random_points(3, 9, 2));
  auto dirs = floating_directions(body, DirectionSet::kFull, 64, 5);
  CHECK(dirs.size() == std::max<std::size_t>(64, 6 + 2 * body.facets().size()));
  CHECK(floating_directions(body, DirectionSet::kFull, 64, 5) == dirs);
  CHECK(floating_directions(body, DirectionSet::kAxes, 0, 5).size() == 6);
  CHECK(floating_directions(body, DirectionSet::kFacets, 0, 5).size() == body.facets().size());
}

TEST_CASE("small delta approaches the body") {
  const auto s = fixtures::standard_simplex(2);
  const auto f = floating_body_approx(s, q(1, 1000000), 4, 1, DirectionSet::kFull);
  for (const auto& h : f.halfspaces) {
    const DirectionalSweep sweep(s, h.theta);
    CHECK((sweep.max_projection() - h.depth.t_hi).to_double() < 2e-3);
  }
}

TEST_CASE("monotone in delta and contains the centroid at delta_n") {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (unsigned seed = 1; seed <= 3; ++seed) {
      const auto body = Polytope::hull(fixtures::random_points(n, n + 6, 50 * n + seed));
      const auto dirs = floating_directions(body, DirectionSet::kFull, 24, seed);
      const auto a = floating_body_approx(body, q(1, 5), dirs);
      const auto b = floating_body_approx(body, delta_n(n), dirs);
      for (std::size_t i = 0; i < dirs.size(); ++i) CHECK(b.halfspaces[i].depth.t_hi <= a.halfspaces[i].depth.t_lo);
      CHECK(contains_point(b, body.centroid()));
      CHECK(is_nonempty(b).nonempty);
    }
  }
}

TEST_CASE("fourier-motzkin") {
  // Triangle x >= 0, y >= 0, x + y <= 1.
  std::vector<Halfspace> tri{{{q(-1), q(0)}, q(0)}, {{q(0), q(-1)}, q(0)}, {{q(1), q(1)}, q(1)}};
  auto r = solve_halfspaces(tri, 2);
  CHECK(r.nonempty);
  for (const auto& h : tri) CHECK(h.contains(*r.witness));
  tri.push_back({{q(-1), q(-1)}, q(-2)});  // x + y >= 2
  CHECK_FALSE(solve_halfspaces(tri, 2).nonempty);
  // A single point in R^3.
  std::vector<Halfspace> point;
  for (std::size_t k = 0; k < 3; ++k) {
    point.push_back({e(3, k), q(1, 3)});
    point.push_back({e(3, k, -1), q(-1, 3)});
  }
  r = solve_halfspaces(point, 3);
  CHECK(r.nonempty);
  CHECK(*r.witness == Point(3, q(1, 3)));
  // Unbounded region.
  r = solve_halfspaces({{{q(1), q(2), q(-1)}, q(-5)}}, 3);
  CHECK(r.nonempty);
  CHECK(dot(Vector{q(1), q(2), q(-1)}, *r.witness) <= q(-5));
}

TEST_CASE("fourier-motzkin agrees with nonemptiness beyond phi") {
  // Past the centroid depth along every facet normal the simplex
  // approximation is empty; just below it is a small triangle.
  const auto s = fixtures::standard_simplex(2);
  const auto f = floating_body_approx(s, q(1, 2), 16, 4, DirectionSet::kFull);
  CHECK_FALSE(is_nonempty(f).nonempty);
  const auto g = floating_body_approx(s, q(4, 9), 16, 4, DirectionSet::kFull);
  const auto ok = is_nonempty(g, Point{q(0), q(0)});
  CHECK(ok.nonempty);
}

TEST_CASE("phi estimate") {
  auto iv = phi_estimate(fixtures::unit_cube(2), quick(), 16);
  CHECK(iv.lo <= 0.5 + 1e-12);
  CHECK(iv.hi == 0.5);
  iv = phi_estimate(fixtures::standard_simplex(3), quick(), 16);
  CHECK(iv.lo <= 27.0 / 64.0 + 1e-9);
  CHECK(iv.hi >= 27.0 / 64.0 - 1e-9);
  const auto body = Polytope::hull(fixtures::random_points(3, 9, 31));
  iv = phi_estimate(body, quick(), 32);
  CHECK(iv.lo >= 27.0 / 64.0 - 1e-6);
  CHECK(iv.lo <= iv.hi + 1e-12);
  const double from_min = 1.0 / (rho_min(body, quick()).value + 1.0);
  CHECK(from_min >= iv.lo - 1e-12);
  CHECK(from_min <= iv.hi + 1e-12);
}

TEST_CASE("elimination and simplex agree") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> coef(-6, 6);
  std::size_t empty = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t m = 2 + static_cast<std::size_t>(trial % 9);
    std::vector<Halfspace> sys;
    for (std::size_t i = 0; i < m; ++i) {
      Vector a(n);
      for (auto& c : a) c = q(coef(rng));
      sys.push_back({a, q(coef(rng), 1 + std::abs(coef(rng)))});
    }
    const auto fm = detail::fourier_motzkin(sys, n, 1u << 30);
    const auto lp = detail::simplex_feasibility(sys, n);
    REQUIRE(fm.has_value());
    CHECK(fm->nonempty == lp.nonempty);
    for (const auto* r : {&*fm, &lp})
      if (r->nonempty)
        for (const auto& h : sys) CHECK(h.contains(*r->witness));
    empty += lp.nonempty ? 0 : 1;
  }
  CHECK(empty > 10);
  // A zero budget forces the fallback.
  const auto s = fixtures::standard_simplex(3);
  const auto f = floating_body_approx(s, q(1, 2), 24, 2, DirectionSet::kFull);
  std::vector<Halfspace> sys;
  for (const auto& h : f.halfspaces) sys.push_back({h.theta, h.depth.t_hi});
  CHECK_FALSE(detail::fourier_motzkin(sys, 3, 0).has_value());
  CHECK_FALSE(detail::simplex_feasibility(sys, 3).nonempty);
}
