#include "doctest.h"
#include "fixtures.hpp"

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/generators.hpp"
#include "centroidcut/io.hpp"
#include "centroidcut/slicing.hpp"

using namespace centroidcut;
using fixtures::q;

namespace {

BodySpec spec_of(BodyKind kind, std::size_t n) {
  BodySpec s;
  s.kind = kind;
  s.n = n;
  return s;
}

}  // namespace

TEST_CASE("basic bodies") {
  auto g = make(spec_of(BodyKind::kCrossPolytope, 3));
  CHECK(g.body.vertices().size() == 6);
  CHECK(g.body.volume() == q(4, 3));
  CHECK(g.body.centroid() == Point(3, q(0)));

  for (std::size_t n = 1; n <= 4; ++n) {
    g = make(spec_of(BodyKind::kSimplex, n));
    CHECK(g.body.centroid() == *g.meta.centroid);
    g = make(spec_of(BodyKind::kCube, n));
    CHECK(g.body.volume() == q(1));
    CHECK(g.body.centroid() == *g.meta.centroid);
    g = make(spec_of(BodyKind::kCrossPolytope, n));
    CHECK(g.body.centroid() == *g.meta.centroid);
  }
  CHECK_THROWS_AS(make(spec_of(BodyKind::kCube, 0)), Error);
  CHECK_THROWS_AS(make(spec_of(BodyKind::kCube, 9)), Error);
}

TEST_CASE("square pyramid") {
  auto s = spec_of(BodyKind::kPyramid, 3);
  const auto g = make(s);
  CHECK(g.body.vertices().size() == 5);
  CHECK(g.body.volume() == q(1, 3));
  CHECK(g.body.centroid()[2] == q(1, 4));
  CHECK(g.body.centroid() == *g.meta.centroid);
  CHECK(g.meta.pyramid);
  CHECK(*g.meta.rho == q(37, 27));
}

TEST_CASE("pyramid metadata matches the exact cut") {
  const BodyKind bases[] = {BodyKind::kCube, BodyKind::kSimplex, BodyKind::kCrossPolytope, BodyKind::kRandomHull};
  for (std::size_t n = 2; n <= 4; ++n) {
    for (BodyKind base : bases) {
      auto s = spec_of(BodyKind::kPyramid, n);
      s.base = base;
      s.seed = 3 * n;
      s.vertex_count = n + 3;
      s.apex_height = q(3, 2);
      s.apex_offset = Vector(n - 1, q(1, 8));
      const auto g = make(s);
      CAPTURE(n);
      CAPTURE(to_string(base));
      CHECK(g.body.centroid() == *g.meta.centroid);
      CHECK(ratio_at(g.body, g.body.centroid(), *g.meta.base_normal).exact() == *g.meta.rho);
    }
  }
  auto bad = spec_of(BodyKind::kPyramid, 3);
  bad.base = BodyKind::kPyramid;
  CHECK_THROWS_AS(make(bad), Error);
  bad.base = BodyKind::kCube;
  bad.apex_height = q(0);
  CHECK_THROWS_AS(make(bad), Error);
}

TEST_CASE("random hull") {
  const auto a = random_hull(3, 10, 42);
  const auto b = random_hull(3, 10, 42);
  CHECK(a.vertices() == b.vertices());
  CHECK(a.vertices().size() >= 4);
  CHECK(a.vertices().size() <= 10);
  CHECK(a.volume() > q(0));
  CHECK(random_hull(2, 3, 5).vertices().size() == 3);
  for (const auto& v : a.vertices())
    for (const auto& x : v) CHECK((x * q(256)).is_integer());
  CHECK_THROWS_AS(random_hull(3, 3, 1), Error);
}

TEST_CASE("profile body from an affine profile is a pyramid") {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto s = spec_of(BodyKind::kProfileBody, n);
    s.profile_t = {q(-1), q(2)};
    s.profile_h = {q(0), q(3, 2)};
    const auto g = make(s);
    CHECK(g.meta.pyramid);
    Vector en(n, q(0));
    en[n - 1] = q(1);
    CHECK(ratio_at(g.body, g.body.centroid(), en).exact() == rho_n(n));
  }
}

TEST_CASE("profile body reproduces its section profile") {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto s = spec_of(BodyKind::kProfileBody, n);
    s.profile_t = {q(-1), q(0), q(1, 2), q(2)};
    s.profile_h = {q(1, 4), q(1), q(9, 8), q(1, 2)};
    const auto g = make(s);
    CHECK_FALSE(g.meta.pyramid);
    Vector en(n, q(0));
    en[n - 1] = q(1);
    for (int i = 0; i <= 24; ++i) {
      const Rational t = q(-1) + q(3) * q(i, 24);
      // piecewise-linear interpolation of the knots
      Rational h;
      for (std::size_t k = 0; k + 1 < s.profile_t.size(); ++k) {
        if (t <= s.profile_t[k + 1]) {
          const Rational w = (t - s.profile_t[k]) / (s.profile_t[k + 1] - s.profile_t[k]);
          h = s.profile_h[k] + w * (s.profile_h[k + 1] - s.profile_h[k]);
          break;
        }
      }
      CHECK(section_value(g.body, en, t) == pow(h, static_cast<unsigned>(n - 1)));
    }
  }
  auto s = spec_of(BodyKind::kProfileBody, 3);
  s.profile_t = {q(0), q(1), q(2)};
  s.profile_h = {q(1), q(0), q(1)};
  CHECK_THROWS_AS(make(s), Error);
}

TEST_CASE("body specs round-trip through JSON deterministically") {
  auto s = spec_of(BodyKind::kPyramid, 3);
  s.base = BodyKind::kRandomHull;
  s.seed = 9;
  s.vertex_count = 7;
  const auto doc = body_spec_to_json(s);
  const auto back = body_spec_from_json(doc);
  CHECK(body_spec_to_json(back).dump() == doc.dump());
  CHECK(io::polytope_to_json(make(s).body).dump() == io::polytope_to_json(make(back).body).dump());
  CHECK(parse_body_kind("cross") == BodyKind::kCrossPolytope);
  CHECK_THROWS_AS(parse_body_kind("sphere"), Error);
  CHECK_THROWS_AS(body_spec_from_json(nlohmann::json::parse(R"({"n": 3})")), Error);
}
