#include "centroidcut/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "centroidcut/detail/directions.hpp"
#include "centroidcut/detail/parallel.hpp"
#include "centroidcut/floating_body.hpp"
#include "centroidcut/profiles.hpp"
#include "centroidcut/slicing.hpp"

namespace centroidcut {

namespace {

// Per-item outcome of each invariant, merged in item order so the report
// does not depend on scheduling.
enum class Status { kPass, kFail, kSkip };

struct Outcome {
  std::vector<std::pair<Status, std::string>> checks;

  void add(bool ok, std::string why = {}) { checks.emplace_back(ok ? Status::kPass : Status::kFail, std::move(why)); }
  void skip() { checks.emplace_back(Status::kSkip, std::string()); }
};

class Tallies {
 public:
  explicit Tallies(std::vector<std::string> names) {
    for (auto& n : names) report_.invariants.push_back({std::move(n), 0, 0, {}});
  }

  void merge(const Outcome& o, const std::string& item) {
    for (std::size_t k = 0; k < o.checks.size(); ++k) {
      auto& t = report_.invariants[k];
      if (o.checks[k].first == Status::kPass) {
        ++t.passed;
      } else if (o.checks[k].first == Status::kFail) {
        if (t.failed++ == 0) t.first_failure = item + (o.checks[k].second.empty() ? "" : ": " + o.checks[k].second);
      }
    }
  }

  VerifyReport finish(std::string suite) {
    report_.suite = std::move(suite);
    return std::move(report_);
  }

 private:
  VerifyReport report_;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Outcome check_fleet_body(const VerifyOptions& o, const BodySpec& spec) {
  Outcome out;
  auto add = [&](bool ok, std::string why = {}) { out.add(ok, std::move(why)); };
  const std::size_t n = spec.n;
  const auto gen = make(spec);
  const Polytope& body = gen.body;
  const Point& c = body.centroid();
  const Rational rn = rho_n(n);
  const Rational dn = delta_n(n);

  SearchConfig search = o.search;
  search.threads = 1;
  const auto rep = rho_centroid(body, search);
  add(rep.certificate, "rho " + std::to_string(rep.rho));
  add(rep.phi >= dn.to_double() - 1e-9, "phi " + std::to_string(rep.phi));
  add(!rep.equality || rep.exact_equality, "equality flagged without an exact witness");

  // Support ratio a/b in [1/n, n].
  const auto dirs = detail::random_directions(n, o.support_directions, mix(spec.seed, 1));
  bool support_ok = true;
  std::string why;
  for (const auto& d : dirs) {
    const auto s = support_interval(body, detail::rationalize_direction(d), c);
    const Rational r = s.a / s.b;
    if (r * Rational(static_cast<long>(n)) < Rational(1) || r > Rational(static_cast<long>(n))) {
      support_ok = false;
      why = "a/b = " + r.str();
      break;
    }
  }
  add(support_ok, why);

  // Midpoint concavity of h on the profile grid.
  double worst = 0.0;
  const auto pdirs = detail::random_directions(n, o.profile_directions, mix(spec.seed, 2));
  for (const auto& d : pdirs)
    worst = std::max(worst, profile(body, detail::rationalize_direction(d), o.profile_grid).max_concavity_violation());
  add(worst <= 1e-12, "violation " + std::to_string(worst));

  // Floating body at delta_n holds the centroid; deeper cuts nest.
  const auto fdirs = floating_directions(body, DirectionSet::kFull, std::max(o.floating_directions, 2 * n),
                                         mix(spec.seed, 3));
  const auto at_dn = floating_body_approx(body, dn, fdirs);
  add(contains_point(at_dn, c), "centroid outside");
  const auto shallow = floating_body_approx(body, dn / Rational(2), fdirs);
  bool nested = true;
  for (std::size_t i = 0; i < fdirs.size(); ++i)
    nested = nested && at_dn.halfspaces[i].depth.t_hi <= shallow.halfspaces[i].depth.t_lo;
  add(nested, "halfspace depths not monotone");
  return out;
}

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const Tally& t) { return t.failed == 0; });
}

BodySpec fleet_spec(const VerifyOptions& options, std::size_t index) {
  const std::size_t span = options.n_max - options.n_min + 1;
  BodySpec spec;
  spec.kind = BodyKind::kRandomHull;
  spec.n = options.n_min + index % span;
  spec.vertex_count = spec.n + 2 + (index / span) % (spec.n + 5);
  spec.seed = mix(options.seed, index);
  return spec;
}

VerifyReport verify_fleet(const VerifyOptions& options) {
  Tallies tallies({"rho(K,c) <= rho_n", "phi >= delta_n", "equality flag has exact witness",
                   "support ratio in [1/n, n]", "h midpoint concave", "centroid in K^delta_n approx",
                   "approx monotone in delta"});
  std::vector<Outcome> outcomes(options.bodies);
  detail::parallel_for(options.bodies, options.threads,
                       [&](std::size_t i) { outcomes[i] = check_fleet_body(options, fleet_spec(options, i)); });
  for (std::size_t i = 0; i < options.bodies; ++i) {
    const auto spec = fleet_spec(options, i);
    tallies.merge(outcomes[i], "body " + std::to_string(i) + " (n=" + std::to_string(spec.n) + ")");
  }
  return tallies.finish("fleet");
}

VerifyReport verify_pyramids(const VerifyOptions& options) {
  std::vector<BodySpec> specs;
  std::vector<bool> is_pyramid;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (BodyKind base : {BodyKind::kCube, BodyKind::kSimplex, BodyKind::kCrossPolytope, BodyKind::kRandomHull}) {
      for (int shifted = 0; shifted < 2; ++shifted) {
        BodySpec s;
        s.kind = BodyKind::kPyramid;
        s.n = n;
        s.base = base;
        s.vertex_count = n + 3;
        s.seed = mix(options.seed, n * 10 + static_cast<std::size_t>(base));
        if (shifted) {
          s.apex_offset = Vector(n - 1, Rational(1, 3));
          s.apex_height = Rational(5, 2);
        }
        specs.push_back(s);
        is_pyramid.push_back(true);
      }
    }
    for (BodyKind k : {BodyKind::kSimplex, BodyKind::kCube, BodyKind::kCrossPolytope}) {
      BodySpec s;
      s.kind = k;
      s.n = n;
      specs.push_back(s);
      is_pyramid.push_back(k == BodyKind::kSimplex);
    }
  }

  Tallies tallies({"base-normal cut = rho_n exactly", "apex-side fraction = delta_n exactly",
                   "closed-form centroid", "equality flagged on pyramids", "no equality flag on controls",
                   "rho(K,c) <= rho_n"});
  std::vector<Outcome> outcomes(specs.size());
  detail::parallel_for(specs.size(), options.threads, [&](std::size_t i) {
    Outcome& out = outcomes[i];
    auto add = [&](bool ok, std::string why = {}) { out.add(ok, std::move(why)); };
    const auto gen = make(specs[i]);
    const Polytope& body = gen.body;
    const std::size_t n = specs[i].n;
    SearchConfig search = options.search;
    search.threads = 1;
    const auto rep = rho_centroid(body, search);
    if (is_pyramid[i]) {
      const auto cut = ratio_at(body, body.centroid(), *gen.meta.base_normal);
      add(cut.exact() == rho_n(n), "ratio " + cut.exact().str());
      add(cut.upper / body.volume() == delta_n(n), "fraction " + (cut.upper / body.volume()).str());
      add(gen.meta.centroid && *gen.meta.centroid == body.centroid());
      add(rep.equality && rep.exact_equality, "gap " + std::to_string(rep.gap));
      out.skip();
    } else {
      out.skip();
      out.skip();
      add(!gen.meta.centroid || *gen.meta.centroid == body.centroid());
      out.skip();
      add(!rep.equality && std::fabs(rep.rho - 1.0) < 1e-6, "rho " + std::to_string(rep.rho));
    }
    add(rep.certificate, "rho " + std::to_string(rep.rho));
  });
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::string item = std::string(to_string(specs[i].kind)) + " n=" + std::to_string(specs[i].n);
    if (specs[i].kind == BodyKind::kPyramid) item += " base=" + std::string(to_string(specs[i].base));
    tallies.merge(outcomes[i], item);
  }
  return tallies.finish("pyramids");
}

VerifyReport verify_moment_profiles(const VerifyOptions& options) {
  std::vector<MomentSpec> grid;
  for (unsigned n = 1; n <= 5; ++n)
    for (double M : {1.0 / 12.0, 1.0 / 6.0, 1.0, 5.0}) {
      const double th = feasibility_threshold({M, 0.0, n});
      for (double m : {th, th / 2.0, 0.0, 1.0}) grid.push_back({M, m, n});
    }
  Tallies tallies({"closed forms meet the moment", "oracle within closed forms", "oracle reaches closed forms (2%)",
                   "frontier: infeasible below", "frontier: feasible above", "support ratio <= n (m <= 0)"});
  std::vector<Outcome> outcomes(grid.size());
  detail::parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    Outcome& out = outcomes[i];
    auto add = [&](bool ok, std::string why = {}) { out.add(ok, std::move(why)); };
    const MomentSpec& s = grid[i];
    const auto lo = min_mu(s);
    const auto hi = max_mu(s);
    auto rel = [](double a, double b) { return std::fabs(a - b) / std::fabs(b); };
    add(rel(moment(lo.profile), s.M) <= 1e-10 && rel(moment(hi.profile), s.M) <= 1e-10);
    const auto r = brute_force_extremals(s, options.oracle_grid, options.oracle_trials, mix(options.seed, i));
    add(r.feasible > 0 && r.mu_lo >= lo.mu - 1e-9 && r.mu_hi <= hi.mu + 1e-9,
        "[" + std::to_string(r.mu_lo) + ", " + std::to_string(r.mu_hi) + "]");
    add(r.mu_lo <= lo.mu * 1.02 && r.mu_hi >= hi.mu * 0.98);
    const double th = feasibility_threshold(s);
    const auto below = search_profiles({s.M, th * (1.0 + 1e-6), s.n}, options.oracle_grid, 200, options.seed);
    const auto above = search_profiles({s.M, th * (1.0 - 1e-6), s.n}, options.oracle_grid, 200, options.seed);
    add(below.feasible == 0, std::to_string(below.feasible) + " feasible");
    add(above.feasible > 0);
    const auto sr = support_ratio_extremes(s, options.oracle_trials / 4, options.seed);
    if (sr.bound_applies) {
      add(sr.within_bound, "b ratio " + std::to_string(sr.b_max / sr.b_min));
    } else {
      out.skip();
    }
  });
  for (std::size_t i = 0; i < grid.size(); ++i)
    tallies.merge(outcomes[i], "n=" + std::to_string(grid[i].n) + " M=" + std::to_string(grid[i].M) +
                                   " m=" + std::to_string(grid[i].m));
  return tallies.finish("lemma5");
}

}  // namespace centroidcut
