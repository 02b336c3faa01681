#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/floating_body.hpp"
#include "centroidcut/generators.hpp"
#include "centroidcut/io.hpp"
#include "centroidcut/profiles.hpp"
#include "centroidcut/slicing.hpp"
#include "centroidcut/svg.hpp"
#include "centroidcut/verify.hpp"

using namespace centroidcut;
using nlohmann::json;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitCertificate = 3;
constexpr int kExitVerify = 4;

struct Global {
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  double tol = 1e-9;
  std::string out;
  std::string format;
};

struct BodyArgs {
  std::string kind;
  std::size_t n = 0;
  std::string base = "cube";
  std::string apex_height;
  std::size_t vertices = 10;
  std::string input;
  std::string spec;
};

// Output is assembled completely before anything is written, so a failing
// command leaves no partial file or stdout.
struct Result {
  std::string text;
  int code = 0;
};

std::string format_or(const Global& g, const std::string& fallback) { return g.format.empty() ? fallback : g.format; }

Rational parse_rational(const std::string& s, const std::string& what) {
  try {
    return Rational::parse(s);
  } catch (const Error&) {
    throw Error(ErrorCode::kParse, "bad " + what + " '" + s + "'");
  }
}

std::vector<Rational> parse_list(const std::string& s, const std::string& what) {
  std::vector<Rational> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item, what));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, "invalid JSON in '" + path + "': " + e.what());
  }
}

GeneratedBody body_from_doc(const json& doc) {
  if (doc.is_object() && doc.contains("vertices")) return {io::polytope_from_json(doc), {}};
  return make(body_spec_from_json(doc));
}

BodySpec spec_from_flags(const BodyArgs& a, const Global& g) {
  if (a.kind.empty()) throw Error(ErrorCode::kParse, "need --body, --input or --spec");
  BodySpec spec;
  if (a.kind == "square") {
    spec.kind = BodyKind::kCube;
    spec.n = 2;
  } else {
    spec.kind = parse_body_kind(a.kind);
    if (a.n == 0) throw Error(ErrorCode::kParse, "--n is required for --body " + a.kind);
    spec.n = a.n;
  }
  spec.base = parse_body_kind(a.base == "square" ? "cube" : a.base);
  if (!a.apex_height.empty()) spec.apex_height = parse_rational(a.apex_height, "apex height");
  spec.vertex_count = a.vertices;
  spec.seed = g.seed.value_or(1);
  return spec;
}

GeneratedBody load_body(const BodyArgs& a, const Global& g) {
  if (!a.input.empty()) return body_from_doc(read_json_file(a.input));
  if (!a.spec.empty()) {
    try {
      return body_from_doc(json::parse(a.spec));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("invalid --spec JSON: ") + e.what());
    }
  }
  return make(spec_from_flags(a, g));
}

SearchConfig search_config(const Global& g) {
  SearchConfig c;
  c.seed = g.seed.value_or(1);
  c.threads = g.threads;
  c.equality_tolerance = g.tol;
  return c;
}

void add_body_options(CLI::App* cmd, BodyArgs& a) {
  cmd->add_option("--body,--kind", a.kind, "simplex|cube|cross-polytope|pyramid|random-hull|profile-body|square");
  cmd->add_option("--n", a.n, "dimension");
  cmd->add_option("--base", a.base, "pyramid base kind");
  cmd->add_option("--apex-height", a.apex_height, "pyramid apex height (p/q)");
  cmd->add_option("--vertices", a.vertices, "random hull point count");
  cmd->add_option("--input", a.input, "Polytope or BodySpec JSON file");
  cmd->add_option("--spec", a.spec, "inline Polytope or BodySpec JSON");
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + io::format_double(v[i]);
  return s;
}

Result cmd_rho(const BodyArgs& a, const Global& g, const std::string& point) {
  const auto gen = load_body(a, g);
  const auto cfg = search_config(g);
  const auto rep = point.empty() ? rho_centroid(gen.body, cfg)
                                 : rho_at_point(gen.body, parse_list(point, "point"), cfg);
  const int code = rep.at_centroid && !rep.certificate ? kExitCertificate : 0;
  if (code != 0) return {{}, code};
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv") {
    std::string s = "rho,rho_n,gap,phi,equality,exact_equality";
    for (std::size_t k = 0; k < rep.theta_star.size(); ++k) s += ",theta_" + std::to_string(k);
    s += "\n" + io::format_double(rep.rho) + "," + rep.rho_n.str() + "," + io::format_double(rep.gap) + "," +
         io::format_double(rep.phi) + "," + (rep.equality ? "1" : "0") + "," + (rep.exact_equality ? "1" : "0") +
         "," + join_doubles(rep.theta_star) + "\n";
    return {s, 0};
  }
  if (fmt == "svg") return {io::body_svg(gen.body), 0};
  return {io::dump(io::asymmetry_report_to_json(rep)), 0};
}

Result cmd_rho_min(const BodyArgs& a, const Global& g) {
  const auto gen = load_body(a, g);
  const auto r = rho_min(gen.body, search_config(g));
  std::vector<double> x;
  for (const auto& v : r.x) x.push_back(v.to_double());
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv")
    return {"value,centroid_value,x\n" + io::format_double(r.value) + "," + io::format_double(r.centroid_value) +
                "," + join_doubles(x) + "\n",
            0};
  if (fmt == "svg") return {io::body_svg(gen.body), 0};
  return {io::dump({{"value", r.value}, {"centroid_value", r.centroid_value}, {"x", io::vector_to_json(r.x)}}), 0};
}

Result cmd_phi(const BodyArgs& a, const Global& g, std::size_t directions) {
  const auto gen = load_body(a, g);
  const auto cfg = search_config(g);
  const auto iv = phi_estimate(gen.body, cfg, directions);
  const double from_min = phi(gen.body, cfg);
  const Rational dn = delta_n(gen.body.dim());
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv")
    return {"phi,lo,hi,delta_n\n" + io::format_double(from_min) + "," + io::format_double(iv.lo) + "," +
                io::format_double(iv.hi) + "," + dn.str() + "\n",
            0};
  return {io::dump({{"phi", from_min}, {"lo", iv.lo}, {"hi", iv.hi}, {"delta_n", io::rational_to_json(dn)}}), 0};
}

Result cmd_floatbody(const BodyArgs& a, const Global& g, const std::string& delta_text, const std::string& dirs,
                     std::size_t directions) {
  const auto gen = load_body(a, g);
  const Rational delta = parse_rational(delta_text, "delta");
  DirectionSet set = DirectionSet::kFull;
  if (dirs == "axes") {
    set = DirectionSet::kAxes;
  } else if (dirs == "facets") {
    set = DirectionSet::kFacets;
  } else if (dirs != "full") {
    throw Error(ErrorCode::kParse, "--dirs must be axes, facets or full");
  }
  const auto approx = floating_body_approx(gen.body, delta, directions, g.seed.value_or(1), set, g.threads);
  const std::string fmt = format_or(g, "json");
  if (fmt == "svg") return {io::floating_body_svg(gen.body, approx), 0};
  if (fmt == "csv") {
    std::string s;
    for (std::size_t k = 0; k < approx.dim; ++k) s += "theta_" + std::to_string(k) + ",";
    s += "t_lo,t_hi\n";
    for (const auto& h : approx.halfspaces) {
      for (const auto& c : h.theta) s += c.str() + ",";
      s += h.depth.t_lo.str() + "," + h.depth.t_hi.str() + "\n";
    }
    return {s, 0};
  }
  return {io::dump(io::floating_body_to_json(approx)), 0};
}

Result cmd_lemma5(const Global& g, const std::string& M_text, const std::string& m_text, unsigned n,
                  std::size_t grid, std::size_t trials) {
  const MomentSpec spec{parse_rational(M_text, "M").to_double(), parse_rational(m_text, "m").to_double(), n};
  const bool feasible = is_feasible(spec);
  json doc{{"M", spec.M}, {"m", spec.m}, {"n", spec.n}, {"threshold", feasibility_threshold(spec)},
           {"feasible", feasible}};
  std::vector<io::Curve> curves;
  std::optional<OracleResult> oracle;
  if (feasible) {
    const auto lo = min_mu(spec);
    const auto hi = max_mu(spec);
    doc["muMin"] = lo.mu;
    doc["bMin"] = lo.b;
    doc["muMax"] = hi.mu;
    doc["bMax"] = hi.b;
    curves.push_back(io::curve(lo.profile, "min mu (affine)"));
    curves.push_back(io::curve(hi.profile, "max mu (1 + m t)"));
    if (trials > 0) {
      oracle = brute_force_extremals(spec, grid, trials, g.seed.value_or(1), g.threads);
      doc["oracle"] = {{"muLo", oracle->mu_lo},
                       {"muHi", oracle->mu_hi},
                       {"feasible", oracle->feasible},
                       {"trials", oracle->trials}};
      curves.push_back(io::curve(oracle->lo_profile, "oracle lo"));
      curves.push_back(io::curve(oracle->hi_profile, "oracle hi"));
    }
  }
  const std::string fmt = format_or(g, "json");
  if (fmt == "svg") {
    if (!feasible) throw Error(ErrorCode::kInfeasible, "no feasible profile to plot");
    return {io::curves_svg(curves), 0};
  }
  if (fmt == "csv") {
    std::string s = "M,m,n,feasible,muMin,bMin,muMax,bMax\n" + io::format_double(spec.M) + "," +
                    io::format_double(spec.m) + "," + std::to_string(n) + "," + (feasible ? "1" : "0");
    for (const char* key : {"muMin", "bMin", "muMax", "bMax"})
      s += "," + (doc.contains(key) ? io::format_double(doc[key].get<double>()) : std::string());
    return {s + "\n", 0};
  }
  return {io::dump(doc), 0};
}

Result cmd_verify(const Global& g, const std::string& suite, VerifyOptions o) {
  o.seed = g.seed.value_or(7);
  o.threads = g.threads;
  o.search.equality_tolerance = g.tol;
  std::vector<VerifyReport> reports;
  if (suite == "fleet" || suite == "all") reports.push_back(verify_fleet(o));
  if (suite == "pyramids" || suite == "all") reports.push_back(verify_pyramids(o));
  if (suite == "lemma5" || suite == "all") reports.push_back(verify_moment_profiles(o));
  if (reports.empty()) throw Error(ErrorCode::kParse, "--suite must be fleet, pyramids, lemma5 or all");
  bool ok = true;
  const std::string fmt = format_or(g, "text");
  std::string s;
  json doc = json::array();
  for (const auto& r : reports) {
    ok = ok && r.ok();
    json inv = json::array();
    if (fmt == "text") s += "suite " + r.suite + "\n";
    for (const auto& t : r.invariants) {
      inv.push_back({{"name", t.name}, {"passed", t.passed}, {"failed", t.failed}, {"first_failure", t.first_failure}});
      if (fmt == "text") {
        char line[160];
        std::snprintf(line, sizeof line, "  %-6s %-40s %5zu pass %5zu fail", t.failed ? "FAIL" : "ok",
                      t.name.c_str(), t.passed, t.failed);
        s += line;
        if (t.failed) s += "  first: " + t.first_failure;
        s += "\n";
      } else if (fmt == "csv") {
        s += r.suite + "," + t.name + "," + std::to_string(t.passed) + "," + std::to_string(t.failed) + "\n";
      }
    }
    doc.push_back({{"suite", r.suite}, {"ok", r.ok()}, {"invariants", std::move(inv)}});
  }
  if (fmt == "json") s = io::dump(doc);
  if (fmt == "csv") s = "suite,invariant,passed,failed\n" + s;
  // The summary is the point of a failing run, so it is still printed.
  return {s, ok ? 0 : kExitVerify};
}

Result cmd_gen(const BodyArgs& a, const Global& g) {
  const auto gen = load_body(a, g);
  const std::string fmt = format_or(g, "json");
  if (fmt == "svg") return {io::body_svg(gen.body), 0};
  return {io::dump(io::polytope_to_json(gen.body)), 0};
}

Result cmd_profile(const BodyArgs& a, const Global& g, const std::string& theta, std::size_t grid, int digits) {
  const auto gen = load_body(a, g);
  Vector dir = theta.empty() ? Vector{} : parse_list(theta, "direction");
  if (dir.empty()) {
    dir.assign(gen.body.dim(), Rational(0));
    dir[0] = Rational(1);
  }
  const auto p = profile(gen.body, dir, grid);
  const std::string fmt = format_or(g, "csv");
  if (fmt == "svg") return {io::curves_svg({io::curve(p, "h = f^(1/(n-1))")}), 0};
  if (fmt == "json") {
    json samples = json::array();
    for (const auto& s : p.samples)
      samples.push_back({{"t", io::rational_to_json(s.t)}, {"f", io::rational_to_json(s.f)}, {"h", s.h}});
    return {io::dump({{"direction", io::vector_to_json(p.direction)},
                      {"reference", io::vector_to_json(p.reference)},
                      {"a", io::rational_to_json(p.a)},
                      {"b", io::rational_to_json(p.b)},
                      {"samples", std::move(samples)}}),
            0};
  }
  return {p.to_csv(digits), 0};
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateInput:
    case ErrorCode::kRefNotInterior:
    case ErrorCode::kInfeasible: return kExitDegenerate;
    default: return kExitParse;
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Centroid cuts, floating bodies and concave profiles"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "equality tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "json | csv | svg")->check(CLI::IsMember({"json", "csv", "svg", "text"}));

  BodyArgs body;
  std::string point, delta, dirs = "full", suite = "fleet", M = "1", m = "0", theta;
  std::size_t directions = 64, grid = 200, trials = 0, profile_grid = 64;
  unsigned n1 = 2;
  int digits = 12;
  VerifyOptions vo;

  auto* rho = app.add_subcommand("rho", "cut ratio at the centroid (or --point)");
  add_body_options(rho, body);
  rho->add_option("--point", point, "comma-separated rational point");

  auto* rmin = app.add_subcommand("rho-min", "descend rho(K, x) over x");
  add_body_options(rmin, body);

  auto* ph = app.add_subcommand("phi", "floating-body threshold estimate");
  add_body_options(ph, body);
  ph->add_option("--directions", directions, "direction budget N");

  auto* fb = app.add_subcommand("floatbody", "outer approximation of K^delta");
  add_body_options(fb, body);
  fb->add_option("--delta", delta, "delta in (0, 1/2]")->required();
  fb->add_option("--dirs", dirs, "axes | facets | full");
  fb->add_option("--directions", directions, "direction budget N for --dirs full");

  auto* l5 = app.add_subcommand("lemma5", "moment-constrained profile extremals");
  l5->add_option("--M", M, "target moment");
  l5->add_option("--m", m, "cap on h'(0)");
  l5->add_option("--n", n1, "exponent n (f = h^(n-1))");
  l5->add_option("--grid", grid, "oracle slope grid");
  l5->add_option("--trials", trials, "oracle random trials (0 skips the oracle)");

  auto* ver = app.add_subcommand("verify", "batch invariant checks");
  ver->add_option("--suite", suite, "fleet | pyramids | lemma5 | all");
  ver->add_option("--bodies", vo.bodies, "fleet size");
  ver->add_option("--nmin", vo.n_min, "smallest fleet dimension");
  ver->add_option("--nmax", vo.n_max, "largest fleet dimension");
  ver->add_option("--directions", vo.floating_directions, "floating-body direction budget N");

  auto* gen = app.add_subcommand("gen", "emit a generated body as Polytope JSON");
  add_body_options(gen, body);

  auto* prof = app.add_subcommand("profile", "section profile along a direction");
  add_body_options(prof, body);
  prof->add_option("--theta", theta, "comma-separated rational direction (default e_1)");
  prof->add_option("--grid", profile_grid, "grid size");
  prof->add_option("--digits", digits, "CSV fractional digits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (vo.n_min < 1 || vo.n_max < vo.n_min) throw Error(ErrorCode::kParse, "need 1 <= --nmin <= --nmax");
    Result r;
    if (*rho) {
      r = cmd_rho(body, g, point);
    } else if (*rmin) {
      r = cmd_rho_min(body, g);
    } else if (*ph) {
      r = cmd_phi(body, g, directions);
    } else if (*fb) {
      r = cmd_floatbody(body, g, delta, dirs, directions);
    } else if (*l5) {
      r = cmd_lemma5(g, M, m, n1, grid, trials);
    } else if (*ver) {
      r = cmd_verify(g, suite, vo);
    } else if (*gen) {
      r = cmd_gen(body, g);
    } else if (*prof) {
      r = cmd_profile(body, g, theta, profile_grid, digits);
    }
    if (r.code == kExitCertificate) {
      std::cerr << "error: centroid certificate failed\n";
      return r.code;
    }
    emit(r.text, g.out);
    return r.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
