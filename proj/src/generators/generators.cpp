#include "centroidcut/generators.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/io.hpp"

namespace centroidcut {

namespace {

std::vector<Point> cube_points(std::size_t n, const Rational& lo, const Rational& hi) {
  std::vector<Point> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = (mask >> k) & 1u ? hi : lo;
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<Point> simplex_points(std::size_t n) {
  std::vector<Point> pts{Point(n, Rational(0))};
  for (std::size_t k = 0; k < n; ++k) {
    Point e(n, Rational(0));
    e[k] = Rational(1);
    pts.push_back(std::move(e));
  }
  return pts;
}

std::vector<Point> cross_points(std::size_t n) {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < n; ++k)
    for (int s : {1, -1}) {
      Point e(n, Rational(0));
      e[k] = Rational(s);
      pts.push_back(std::move(e));
    }
  return pts;
}

Vector unit(std::size_t n, std::size_t k) {
  Vector e(n, Rational(0));
  e[k] = Rational(1);
  return e;
}

GeneratedBody make_pyramid(const BodySpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw Error(ErrorCode::kBadSpec, "pyramid needs n >= 2");
  if (spec.apex_height.sign() <= 0) throw Error(ErrorCode::kBadSpec, "apex height must be positive");
  std::vector<Point> base;
  switch (spec.base) {
    case BodyKind::kCube: base = cube_points(n - 1, Rational(0), Rational(1)); break;
    case BodyKind::kSimplex: base = simplex_points(n - 1); break;
    case BodyKind::kCrossPolytope: base = cross_points(n - 1); break;
    case BodyKind::kRandomHull: base = random_hull(n - 1, spec.vertex_count, spec.seed).vertices(); break;
    default: throw Error(ErrorCode::kBadSpec, "unsupported pyramid base " + std::string(to_string(spec.base)));
  }
  const Point base_centroid = Polytope::hull(base).centroid();
  Vector offset = spec.apex_offset.value_or(base_centroid);
  if (offset.size() != n - 1) throw Error(ErrorCode::kBadSpec, "apex offset must have n-1 coordinates");

  std::vector<Point> pts;
  for (auto& b : base) {
    b.push_back(Rational(0));
    pts.push_back(std::move(b));
  }
  Point apex = offset;
  apex.push_back(spec.apex_height);
  pts.push_back(apex);

  // Sections shrink linearly toward the apex, so the centroid sits 1/(n+1)
  // of the way from the base centroid to the apex.
  Point c = base_centroid;
  c.push_back(Rational(0));
  c = c + scaled(apex - c, Rational(1, static_cast<long>(n + 1)));

  GeneratedBody out{Polytope::hull(pts), {}};
  out.meta.centroid = std::move(c);
  out.meta.rho = rho_n(n);
  out.meta.base_normal = unit(n, n - 1);
  out.meta.pyramid = true;
  return out;
}

GeneratedBody make_profile_body(const BodySpec& spec) {
  const std::size_t n = spec.n;
  std::vector<Rational> t = spec.profile_t;
  std::vector<Rational> h = spec.profile_h;
  if (t.empty() && h.empty()) {
    t = {Rational(0), Rational(1)};
    h = {Rational(0), Rational(1)};
  }
  if (t.size() != h.size() || t.size() < 2) throw Error(ErrorCode::kBadSpec, "profile needs >= 2 matching knots");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i] < t[i + 1])) throw Error(ErrorCode::kBadSpec, "profile knots must increase");
  bool positive = false;
  for (const auto& v : h) {
    if (v.sign() < 0) throw Error(ErrorCode::kBadSpec, "profile values must be nonnegative");
    positive = positive || v.sign() > 0;
  }
  if (!positive) throw Error(ErrorCode::kBadSpec, "profile is identically zero");
  std::vector<Rational> slopes;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) slopes.push_back((h[i + 1] - h[i]) / (t[i + 1] - t[i]));
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i)
    if (slopes[i + 1] > slopes[i]) throw Error(ErrorCode::kBadSpec, "profile must be concave");

  // K = union of t e_n + h(t) B0 with B0 = [-1/2, 1/2]^{n-1}.
  const auto b0 = n > 1 ? cube_points(n - 1, Rational(-1, 2), Rational(1, 2)) : std::vector<Point>{Point{}};
  std::vector<Point> pts;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (h[i].is_zero()) {
      Point p(n, Rational(0));
      p[n - 1] = t[i];
      pts.push_back(std::move(p));
      continue;
    }
    for (const auto& v : b0) {
      Point p = scaled(v, h[i]);
      p.push_back(t[i]);
      pts.push_back(std::move(p));
    }
  }
  GeneratedBody out{Polytope::hull(pts), {}};
  const bool affine = std::all_of(slopes.begin(), slopes.end(), [&](const Rational& s) { return s == slopes.front(); });
  if (n >= 2 && affine && (h.front().is_zero() || h.back().is_zero())) {
    out.meta.pyramid = true;
    out.meta.rho = rho_n(n);
    out.meta.base_normal = unit(n, n - 1);
  }
  return out;
}

}  // namespace

std::string_view to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::kSimplex: return "simplex";
    case BodyKind::kCube: return "cube";
    case BodyKind::kCrossPolytope: return "cross-polytope";
    case BodyKind::kPyramid: return "pyramid";
    case BodyKind::kRandomHull: return "random-hull";
    case BodyKind::kProfileBody: return "profile-body";
  }
  return "unknown";
}

BodyKind parse_body_kind(std::string_view name) {
  if (name == "simplex") return BodyKind::kSimplex;
  if (name == "cube") return BodyKind::kCube;
  if (name == "cross-polytope" || name == "cross") return BodyKind::kCrossPolytope;
  if (name == "pyramid") return BodyKind::kPyramid;
  if (name == "random-hull" || name == "random") return BodyKind::kRandomHull;
  if (name == "profile-body" || name == "profile") return BodyKind::kProfileBody;
  throw Error(ErrorCode::kBadSpec, "unknown body kind '" + std::string(name) + "'");
}

Polytope random_hull(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kBadSpec, "dimension must be positive");
  if (m < n + 1) throw Error(ErrorCode::kBadSpec, "random hull needs at least n+1 points");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Point> pts(m, Point(n));
    for (auto& p : pts)
      for (auto& x : p) x = Rational(static_cast<long>(rng() % 513) - 256, 256);
    try {
      return Polytope::hull(pts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateInput) throw;
    }
  }
  throw Error(ErrorCode::kDegenerateInput, "random hull: 100 degenerate draws");
}

GeneratedBody make(const BodySpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw Error(ErrorCode::kBadSpec, "dimension must be positive");
  if (n > max_dimension())
    throw Error(ErrorCode::kDimensionTooLarge, "dimension " + std::to_string(n) + " exceeds cap");
  BodyMetadata meta;
  switch (spec.kind) {
    case BodyKind::kSimplex:
      meta.centroid = Point(n, Rational(1, static_cast<long>(n + 1)));
      meta.rho = rho_n(n);
      meta.base_normal = unit(n, n - 1);
      meta.pyramid = true;
      return {Polytope::hull(simplex_points(n)), std::move(meta)};
    case BodyKind::kCube:
      meta.centroid = Point(n, Rational(1, 2));
      meta.rho = Rational(1);
      return {Polytope::hull(cube_points(n, Rational(0), Rational(1))), std::move(meta)};
    case BodyKind::kCrossPolytope:
      meta.centroid = Point(n, Rational(0));
      meta.rho = Rational(1);
      return {Polytope::hull(cross_points(n)), std::move(meta)};
    case BodyKind::kPyramid: return make_pyramid(spec);
    case BodyKind::kRandomHull: return {random_hull(n, spec.vertex_count, spec.seed), std::move(meta)};
    case BodyKind::kProfileBody: return make_profile_body(spec);
  }
  throw Error(ErrorCode::kBadSpec, "unknown body kind");
}

BodySpec body_spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "body spec must be an object");
  BodySpec spec;
  try {
    spec.kind = parse_body_kind(doc.at("kind").get<std::string>());
    spec.n = doc.at("n").get<std::size_t>();
    if (doc.contains("base")) spec.base = parse_body_kind(doc["base"].get<std::string>());
    if (doc.contains("apex_height")) spec.apex_height = io::rational_from_json(doc["apex_height"]);
    if (doc.contains("apex_offset")) spec.apex_offset = io::vector_from_json(doc["apex_offset"]);
    if (doc.contains("vertex_count")) spec.vertex_count = doc["vertex_count"].get<std::size_t>();
    if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("profile")) {
      spec.profile_t = io::vector_from_json(doc["profile"].at("t"));
      spec.profile_h = io::vector_from_json(doc["profile"].at("h"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("body spec: ") + e.what());
  }
  return spec;
}

nlohmann::json body_spec_to_json(const BodySpec& spec) {
  nlohmann::json doc{{"kind", std::string(to_string(spec.kind))}, {"n", spec.n}};
  switch (spec.kind) {
    case BodyKind::kPyramid:
      doc["base"] = std::string(to_string(spec.base));
      doc["apex_height"] = io::rational_to_json(spec.apex_height);
      if (spec.apex_offset) doc["apex_offset"] = io::vector_to_json(*spec.apex_offset);
      if (spec.base == BodyKind::kRandomHull) {
        doc["vertex_count"] = spec.vertex_count;
        doc["seed"] = spec.seed;
      }
      break;
    case BodyKind::kRandomHull:
      doc["vertex_count"] = spec.vertex_count;
      doc["seed"] = spec.seed;
      break;
    case BodyKind::kProfileBody:
      doc["profile"] = {{"t", io::vector_to_json(spec.profile_t)}, {"h", io::vector_to_json(spec.profile_h)}};
      break;
    default: break;
  }
  return doc;
}

}  // namespace centroidcut
