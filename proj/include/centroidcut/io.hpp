#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/floating_body.hpp"
#include "centroidcut/geometry.hpp"

namespace centroidcut::io {

/// Rational from a JSON integer, a "p/q" / decimal string, or (exactly) a float.
Rational rational_from_json(const nlohmann::json& value);
nlohmann::json rational_to_json(const Rational& value);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& value);

/// {"dim": n, "vertices": [["p/q", ...], ...]}
nlohmann::json polytope_to_json(const Polytope& body);
Polytope polytope_from_json(const nlohmann::json& doc);

Polytope read_polytope_file(const std::string& path);

/// Fixed-format float rendering with 17 significant digits.
std::string format_double(double value);

/// Two-space indented JSON with floats written by format_double.
std::string dump(const nlohmann::json& doc);

/// {rho, theta_star, rho_n, gap, phi, exact_witnesses: [{theta, ratio_p, ratio_q}], ...}
nlohmann::json asymmetry_report_to_json(const AsymmetryReport& report);

/// {delta: "p/q", halfspaces: [{theta: [...], t_lo: "p/q", t_hi: "p/q"}]}
nlohmann::json floating_body_to_json(const FloatingBodyApprox& approx);
FloatingBodyApprox floating_body_from_json(const nlohmann::json& doc);

}  // namespace centroidcut::io
