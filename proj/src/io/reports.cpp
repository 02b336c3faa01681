#include <algorithm>

#include "centroidcut/error.hpp"
#include "centroidcut/io.hpp"

namespace centroidcut::io {

using nlohmann::json;

namespace {

void write(std::string& out, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case json::value_t::number_float: out += format_double(v.get<double>()); return;
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Short scalar arrays stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!flat) out += pad;
        write(out, v[i], indent + 2);
        if (i + 1 < v.size()) out += flat ? ", " : ",\n";
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = v.begin(); it != v.end(); ++it, ++i) {
        out += pad + json(it.key()).dump() + ": ";
        write(out, it.value(), indent + 2);
        if (i + 1 < v.size()) out += ",\n";
      }
      out += "\n" + close + "}";
      return;
    }
    default: out += v.dump(); return;
  }
}

json doubles(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

}  // namespace

std::string dump(const json& doc) {
  std::string out;
  write(out, doc, 0);
  out += '\n';
  return out;
}

json asymmetry_report_to_json(const AsymmetryReport& report) {
  json witnesses = json::array();
  for (const auto& w : report.exact_witnesses)
    witnesses.push_back({{"theta", vector_to_json(w.theta)},
                         {"ratio_p", w.ratio.numerator_str()},
                         {"ratio_q", w.ratio.denominator_str()}});
  json doc{{"rho", report.rho},
           {"theta_star", doubles(report.theta_star)},
           {"rho_n", rational_to_json(report.rho_n)},
           {"gap", report.gap},
           {"phi", report.phi},
           {"exact_witnesses", std::move(witnesses)},
           {"search_rho", report.search_rho},
           {"x", vector_to_json(report.x)},
           {"at_centroid", report.at_centroid},
           {"equality", report.equality},
           {"exact_equality", report.exact_equality}};
  if (report.at_centroid) doc["certificate"] = report.certificate;
  if (!report.exact_witnesses.empty()) doc["best_exact"] = rational_to_json(report.best().ratio);
  return doc;
}

json floating_body_to_json(const FloatingBodyApprox& approx) {
  json hs = json::array();
  for (const auto& h : approx.halfspaces)
    hs.push_back({{"theta", vector_to_json(h.theta)},
                  {"t_lo", rational_to_json(h.depth.t_lo)},
                  {"t_hi", rational_to_json(h.depth.t_hi)}});
  return json{{"delta", rational_to_json(approx.delta)}, {"dim", approx.dim}, {"halfspaces", std::move(hs)}};
}

FloatingBodyApprox floating_body_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("delta") || !doc.contains("halfspaces") || !doc["halfspaces"].is_array())
    throw Error(ErrorCode::kParse, "floating body JSON needs \"delta\" and \"halfspaces\"");
  FloatingBodyApprox out;
  out.delta = rational_from_json(doc["delta"]);
  for (const auto& h : doc["halfspaces"]) {
    if (!h.is_object() || !h.contains("theta") || !h.contains("t_lo") || !h.contains("t_hi"))
      throw Error(ErrorCode::kParse, "halfspace needs theta, t_lo and t_hi");
    out.halfspaces.push_back(
        {vector_from_json(h["theta"]), {rational_from_json(h["t_lo"]), rational_from_json(h["t_hi"])}});
  }
  if (doc.contains("dim")) {
    out.dim = doc["dim"].get<std::size_t>();
  } else if (!out.halfspaces.empty()) {
    out.dim = out.halfspaces.front().theta.size();
  }
  for (const auto& h : out.halfspaces)
    if (h.theta.size() != out.dim) throw Error(ErrorCode::kParse, "halfspace of wrong dimension");
  return out;
}

}  // namespace centroidcut::io
