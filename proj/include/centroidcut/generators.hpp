#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "centroidcut/geometry.hpp"

namespace centroidcut {

enum class BodyKind { kSimplex, kCube, kCrossPolytope, kPyramid, kRandomHull, kProfileBody };

std::string_view to_string(BodyKind kind);
/// Accepts the canonical names plus "cross" and "random".
BodyKind parse_body_kind(std::string_view name);

struct BodySpec {
  BodyKind kind = BodyKind::kSimplex;
  std::size_t n = 2;
  // pyramid
  BodyKind base = BodyKind::kCube;
  Rational apex_height = Rational(1);
  std::optional<Vector> apex_offset;  // in-base coordinates of the apex; default base centroid
  // random-hull (also random pyramid bases)
  std::size_t vertex_count = 10;
  std::uint64_t seed = 1;
  // profile-body: knots of a concave piecewise-linear h along e_n
  std::vector<Rational> profile_t;
  std::vector<Rational> profile_h;
};

struct BodyMetadata {
  std::optional<Point> centroid;      // closed-form centroid when known
  std::optional<Rational> rho;        // predicted ρ(K, c)
  std::optional<Vector> base_normal;  // pyramids: the cut direction that attains ρ_n
  bool pyramid = false;
};

struct GeneratedBody {
  Polytope body;
  BodyMetadata meta;
};

/// Throws BadSpec on malformed parameters.
GeneratedBody make(const BodySpec& spec);

/// Hull of m seeded points with coordinates in {k/256 : |k| <= 256}^n.
/// Redraws degenerate samples; gives up (DegenerateInput) after 100.
Polytope random_hull(std::size_t n, std::size_t m, std::uint64_t seed);

BodySpec body_spec_from_json(const nlohmann::json& doc);
nlohmann::json body_spec_to_json(const BodySpec& spec);

}  // namespace centroidcut
