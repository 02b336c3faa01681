#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "centroidcut/error.hpp"
#include "centroidcut/io.hpp"

namespace centroidcut::io {

using nlohmann::json;

Rational rational_from_json(const json& value) {
  if (value.is_number_integer()) return Rational(static_cast<long long>(value.get<std::int64_t>()));
  if (value.is_number_unsigned()) return Rational::parse(std::to_string(value.get<std::uint64_t>()));
  if (value.is_number_float()) return Rational::from_double(value.get<double>());
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  throw Error(ErrorCode::kParse, "expected a rational, got " + value.dump());
}

json rational_to_json(const Rational& value) { return value.str(); }

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(rational_to_json(x));
  return arr;
}

Vector vector_from_json(const json& value) {
  if (!value.is_array()) throw Error(ErrorCode::kParse, "expected an array of rationals");
  Vector out;
  out.reserve(value.size());
  for (const auto& x : value) out.push_back(rational_from_json(x));
  return out;
}

json polytope_to_json(const Polytope& body) {
  json vertices = json::array();
  for (const auto& v : body.vertices()) vertices.push_back(vector_to_json(v));
  return json{{"dim", body.dim()}, {"vertices", std::move(vertices)}};
}

Polytope polytope_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("vertices"))
    throw Error(ErrorCode::kParse, "polytope JSON needs \"dim\" and \"vertices\"");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0)
    throw Error(ErrorCode::kParse, "\"dim\" must be a positive integer");
  const auto n = static_cast<std::size_t>(doc["dim"].get<long long>());
  const auto& verts = doc["vertices"];
  if (!verts.is_array()) throw Error(ErrorCode::kParse, "\"vertices\" must be an array");
  std::vector<Point> points;
  for (const auto& v : verts) {
    Point p = vector_from_json(v);
    if (p.size() != n) throw Error(ErrorCode::kParse, "vertex length differs from \"dim\"");
    points.push_back(std::move(p));
  }
  return Polytope::hull(points);
}

Polytope read_polytope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return polytope_from_json(doc);
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace centroidcut::io
