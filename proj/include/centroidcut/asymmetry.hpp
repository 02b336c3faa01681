#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "centroidcut/geometry.hpp"

namespace centroidcut {

struct SearchConfig {
  std::uint64_t seed = 1;
  std::size_t multistart = 8;
  double tolerance = 1e-13;  // Nelder-Mead spread at which a local search stops
  std::size_t grid_directions = 1000;
  std::size_t max_evaluations = 400;  // per local search
  double equality_tolerance = 1e-9;
  std::size_t threads = 1;
  bool candidate_seeds = true;  // start local searches from the exact candidates too
};

/// (1 + 1/n)^n - 1
Rational rho_n(std::size_t n);
/// (1 + 1/n)^-n
Rational delta_n(std::size_t n);

struct CutRatio {
  Rational lower;  // vol(K ∩ {y.θ <= x.θ})
  Rational upper;
  bool infinite = false;

  /// max(lower, upper) / min(lower, upper); meaningless when infinite.
  [[nodiscard]] Rational exact() const;
  [[nodiscard]] double value() const;
};

/// Throws RefNotInterior unless x is interior.
CutRatio ratio_at(const Polytope& body, const Point& x, const Vector& direction);

struct ExactWitness {
  Vector theta;
  Rational ratio;
};

struct AsymmetryReport {
  Point x;
  double rho = 1.0;                // max of the exact candidates and the search
  double search_rho = 1.0;         // numerical direction search alone
  std::vector<double> theta_star;  // unit vector
  Rational rho_n;
  double gap = 0.0;  // rho_n - rho
  double phi = 0.5;  // 1 / (rho + 1)
  std::vector<ExactWitness> exact_witnesses;
  std::size_t best_witness = 0;
  bool at_centroid = false;
  bool equality = false;        // gap < equality tolerance
  bool exact_equality = false;  // some exact witness equals rho_n
  /// Only meaningful at the centroid: rho <= rho_n + 1e-9 and no exact
  /// witness exceeds rho_n.
  bool certificate = true;

  [[nodiscard]] const ExactWitness& best() const { return exact_witnesses.at(best_witness); }
};

/// Facet normals and (vertex - x) directions, primitive and deduplicated
/// up to sign.
std::vector<Vector> candidate_directions(const Polytope& body, const Point& x);

AsymmetryReport rho_at_point(const Polytope& body, const Point& x, const SearchConfig& config);
AsymmetryReport rho_centroid(const Polytope& body, const SearchConfig& config);

struct RhoMinResult {
  Point x;
  double value = 1.0;
  double centroid_value = 1.0;
};

RhoMinResult rho_min(const Polytope& body, const SearchConfig& config);
double phi(const Polytope& body, const SearchConfig& config);

}  // namespace centroidcut
