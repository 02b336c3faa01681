#pragma once

#include <string>
#include <vector>

#include "centroidcut/floating_body.hpp"
#include "centroidcut/geometry.hpp"
#include "centroidcut/profiles.hpp"
#include "centroidcut/slicing.hpp"

namespace centroidcut::io {

/// Planar bodies only (BadSpec otherwise). Marks the centroid.
std::string body_svg(const Polytope& body);
/// Body outline with the outer approximation shaded.
std::string floating_body_svg(const Polytope& body, const FloatingBodyApprox& approx);

struct Curve {
  std::string label;
  std::vector<double> t;
  std::vector<double> h;
};

/// (t, h) polylines on shared axes.
std::string curves_svg(const std::vector<Curve>& curves);
Curve curve(const ConcaveProfile& p, std::string label);
Curve curve(const SectionProfile& p, std::string label);

}  // namespace centroidcut::io
