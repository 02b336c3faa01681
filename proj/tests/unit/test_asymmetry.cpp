#include <cmath>
#include <optional>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/detail/directions.hpp"
#include "centroidcut/detail/float_body.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/slicing.hpp"

using namespace centroidcut;
using fixtures::q;

namespace {

SearchConfig quick() {
  SearchConfig c;
  c.grid_directions = 300;
  c.multistart = 4;
  return c;
}

Polytope random_body(std::size_t n, unsigned seed, std::size_t points = 12) {
  return Polytope::hull(fixtures::random_points(n, points, seed));
}

double grid_max(const Polytope& body, const Point& x, std::size_t count) {
  const detail::FloatBody fb(body);
  const auto xd = to_doubles(x);
  double best = 1.0;
  for (const auto& d : detail::quasi_random_directions(body.dim(), count)) best = std::max(best, fb.ratio(xd, d));
  return best;
}

}  // namespace

TEST_CASE("rho_n and delta_n") {
  CHECK(rho_n(2) == q(5, 4));
  CHECK(rho_n(3) == q(37, 27));
  CHECK(rho_n(4) == q(369, 256));
  CHECK(delta_n(2) == q(4, 9));
  CHECK(delta_n(3) == q(27, 64));
  for (std::size_t n = 1; n <= 6; ++n) CHECK(delta_n(n) * (rho_n(n) + q(1)) == q(1));
}

TEST_CASE("ratio_at examples") {
  const auto cube = fixtures::unit_cube(3);
  CHECK(ratio_at(cube, {q(1, 2), q(1, 2), q(1, 2)}, {q(1), q(0), q(0)}).exact() == q(1));

  const auto tri = fixtures::standard_simplex(2);
  CHECK(ratio_at(tri, tri.centroid(), {q(1), q(1)}).exact() == q(5, 4));

  const auto pyr = fixtures::square_pyramid();
  CHECK(ratio_at(pyr, pyr.centroid(), {q(0), q(0), q(1)}).exact() == q(37, 27));

  CHECK_THROWS_AS(ratio_at(cube, {q(0), q(1, 2), q(1, 2)}, {q(1), q(0), q(0)}), Error);
  CHECK_THROWS_AS(ratio_at(cube, {q(2), q(1, 2), q(1, 2)}, {q(1), q(0), q(0)}), Error);
  try {
    (void)ratio_at(cube, {q(1), q(1, 2), q(1, 2)}, {q(1), q(0), q(0)});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRefNotInterior);
  }
}

TEST_CASE("ratio_at is symmetric in the direction") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto body = random_body(3, seed);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> c(-9, 9);
    for (int trial = 0; trial < 5; ++trial) {
      Vector theta{q(c(rng)), q(c(rng)), q(c(rng) | 1)};
      Vector neg{-theta[0], -theta[1], -theta[2]};
      CHECK(ratio_at(body, body.centroid(), theta).exact() == ratio_at(body, body.centroid(), neg).exact());
    }
  }
}

TEST_CASE("float body tracks exact cut volumes") {
  const auto body = random_body(4, 3, 14);
  const detail::FloatBody fb(body);
  CHECK(fb.volume() == doctest::Approx(body.volume().to_double()).epsilon(1e-14));
  for (const auto& d : detail::quasi_random_directions(4, 20)) {
    const Vector theta = detail::rationalize_direction(d, 12);
    const Rational t = dot(theta, body.centroid());
    const double exact = cumulative_volume(body, theta, t).to_double();
    CHECK(fb.cumulative(to_doubles(theta), t.to_double()) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("rho_centroid on simplices") {
  const auto cfg = quick();
  auto r = rho_centroid(fixtures::standard_simplex(2), cfg);
  CHECK(r.best().ratio == q(5, 4));
  CHECK(r.rho == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(r.exact_equality);
  CHECK(r.equality);
  CHECK(r.certificate);

  const auto s3 = fixtures::standard_simplex(3);
  r = rho_centroid(s3, cfg);
  CHECK(r.best().ratio == q(37, 27));
  CHECK(r.rho == doctest::Approx(37.0 / 27.0).epsilon(1e-12));
  bool is_facet_normal = false;
  for (const auto& f : s3.facets()) {
    const auto nf = detail::normalized(to_doubles(f.normal));
    double c = 0.0;
    for (std::size_t k = 0; k < 3; ++k) c += nf[k] * r.theta_star[k];
    is_facet_normal = is_facet_normal || std::fabs(std::fabs(c) - 1.0) < 1e-9;
  }
  CHECK(is_facet_normal);
  CHECK(r.phi == doctest::Approx(27.0 / 64.0).epsilon(1e-12));

  r = rho_centroid(fixtures::standard_simplex(4), cfg);
  CHECK(r.best().ratio == q(369, 256));
  CHECK(r.certificate);
}

TEST_CASE("unseeded search finds the simplex facet normals") {
  SearchConfig cfg;
  cfg.candidate_seeds = false;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = rho_centroid(fixtures::standard_simplex(n), cfg);
    CHECK(r.search_rho == doctest::Approx(rho_n(n).to_double()).epsilon(1e-9));
    CHECK(r.search_rho <= r.rho);
  }
}

TEST_CASE("rho_centroid on cubes") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = rho_centroid(fixtures::unit_cube(n), quick());
    CHECK(r.rho == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.rho >= 1.0);
  }
  const auto r = rho_centroid(fixtures::unit_cube(3), quick());
  CHECK(r.rho_n - r.best().ratio == q(10, 27));
  CHECK(r.gap == doctest::Approx(10.0 / 27.0).epsilon(1e-9));
  CHECK_FALSE(r.equality);
}

TEST_CASE("pyramid equality along the base normal") {
  const auto pyr = fixtures::square_pyramid();
  const auto r = rho_centroid(pyr, quick());
  CHECK(r.exact_equality);
  CHECK(r.equality);
  CHECK(r.certificate);
  CHECK(std::fabs(r.theta_star[2]) == doctest::Approx(1.0));
}

TEST_CASE("random bodies respect the centroid bound") {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (unsigned seed = 1; seed <= 4; ++seed) {
      const auto body = random_body(n, 100 * n + seed);
      const auto r = rho_centroid(body, quick());
      CAPTURE(n);
      CAPTURE(seed);
      CHECK(r.certificate);
      CHECK(r.rho <= rho_n(n).to_double() + 1e-9);
      CHECK(r.rho >= r.best().ratio.to_double());
      for (const auto& w : r.exact_witnesses) CHECK(w.ratio <= rho_n(n));
      CHECK(r.phi * (r.rho + 1.0) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("search beats a dense direction grid") {
  const auto body = random_body(3, 42, 10);
  SearchConfig cfg;
  const auto r = rho_centroid(body, cfg);
  CHECK(r.rho >= grid_max(body, body.centroid(), 10000) - 1e-9);
}

TEST_CASE("rho is affine invariant") {
  const auto body = random_body(3, 7, 10);
  const auto base = rho_centroid(body, quick());
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> c(-4, 4);
  int images = 0;
  while (images < 10) {
    std::vector<Vector> m(3, Vector(3));
    for (auto& row : m)
      for (auto& x : row) x = q(c(rng), 2);
    Vector shift{q(c(rng)), q(c(rng)), q(c(rng))};
    std::optional<Polytope> image;
    try {
      image.emplace(affine_image(body, m, shift));
    } catch (const Error&) {
      continue;  // singular map
    }
    ++images;
    const auto r = rho_centroid(*image, quick());
    CHECK(r.rho == doctest::Approx(base.rho).epsilon(1e-6));
    CHECK(r.best().ratio == base.best().ratio);
  }
}

TEST_CASE("ratio along a line through the body is unimodal") {
  const auto body = random_body(3, 5);
  const Vector theta{q(1), q(2), q(-1)};
  const auto c = body.centroid();
  const auto span = support_interval(body, theta, c);
  const Rational norm2 = dot(theta, theta);
  std::vector<Rational> ratios;
  std::vector<Rational> lowers;
  for (int i = 1; i < 40; ++i) {
    const Rational s = -span.a + (span.a + span.b) * q(i, 40);
    const Point x = c + scaled(theta, s / norm2);
    if (body.locate(x) != Location::kInterior) continue;
    const auto r = ratio_at(body, x, theta);
    lowers.push_back(r.lower);
    ratios.push_back(r.exact());
  }
  REQUIRE(ratios.size() > 10);
  for (std::size_t i = 1; i < lowers.size(); ++i) CHECK(lowers[i - 1] < lowers[i]);
  std::size_t argmin = 0;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (ratios[i] < ratios[argmin]) argmin = i;
  for (std::size_t i = 1; i <= argmin; ++i) CHECK(ratios[i] <= ratios[i - 1]);
  for (std::size_t i = argmin + 1; i < ratios.size(); ++i) CHECK(ratios[i - 1] <= ratios[i]);
}

TEST_CASE("rho_min") {
  const auto cfg = quick();
  auto m = rho_min(fixtures::unit_cube(3), cfg);
  CHECK(m.value == doctest::Approx(1.0).epsilon(1e-6));

  m = rho_min(fixtures::standard_simplex(2), cfg);
  CHECK(m.value <= 1.25 + 1e-12);
  CHECK(m.value >= 1.0);

  const auto body = random_body(3, 9);
  m = rho_min(body, cfg);
  CHECK(m.value <= m.centroid_value + 1e-12);
  CHECK(body.locate(m.x) == Location::kInterior);
  CHECK(phi(body, cfg) >= delta_n(3).to_double() - 1e-6);
  CHECK(phi(fixtures::unit_cube(2), cfg) == doctest::Approx(0.5));
}
