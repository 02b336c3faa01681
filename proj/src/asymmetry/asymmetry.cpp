#include "centroidcut/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "centroidcut/detail/directions.hpp"
#include "centroidcut/detail/float_body.hpp"
#include "centroidcut/detail/nelder_mead.hpp"
#include "centroidcut/detail/parallel.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/slicing.hpp"

namespace centroidcut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_interior(const Polytope& body, const Point& x) {
  if (x.size() != body.dim()) throw Error(ErrorCode::kDimensionMismatch, "point has wrong dimension");
  if (body.locate(x) != Location::kInterior)
    throw Error(ErrorCode::kRefNotInterior, "point " + to_string(x) + " is not interior");
}

CutRatio ratio_unchecked(const Polytope& body, const Point& x, const Vector& direction) {
  CutRatio r;
  r.lower = cumulative_volume(body, direction, dot(direction, x));
  r.upper = body.volume() - r.lower;
  r.infinite = r.lower.is_zero() || r.upper.is_zero();
  return r;
}

Vector canonical(const Vector& v) {
  Vector p = primitive(v);
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    if (c.sign() < 0)
      for (auto& d : p) d = -d;
    break;
  }
  return p;
}

std::vector<double> canonical(std::vector<double> v) {
  for (double c : v) {
    if (c == 0.0) continue;
    if (c < 0.0)
      for (double& d : v) d = -d;
    break;
  }
  return v;
}

struct Candidate {
  double value = -kInf;
  std::vector<double> direction;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.direction < b.direction;
}

// Local maximization of the float ratio on the chart θ0 + span(θ0^⊥).
Candidate local_search(const detail::FloatBody& fb, const std::vector<double>& x, std::vector<double> theta,
                       const SearchConfig& config) {
  const std::size_t n = theta.size();
  Candidate best{fb.ratio(x, theta), theta};
  if (n < 2) return best;
  for (double step : {0.2, 0.02}) {
    const auto basis = detail::orthogonal_complement(best.direction);
    const auto origin = best.direction;
    auto direction_of = [&](const std::vector<double>& y) {
      std::vector<double> d = origin;
      for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t k = 0; k < n; ++k) d[k] += y[i] * basis[i][k];
      return detail::normalized(std::move(d));
    };
    auto objective = [&](const std::vector<double>& y) { return -fb.ratio(x, direction_of(y)); };
    const auto result =
        detail::nelder_mead(objective, std::vector<double>(n - 1, 0.0), step, config.max_evaluations / 2,
                            config.tolerance);
    if (-result.value > best.value) best = Candidate{-result.value, direction_of(result.x)};
  }
  best.direction = canonical(best.direction);
  return best;
}

Candidate search_directions(const detail::FloatBody& fb, const std::vector<double>& x,
                            const std::vector<std::vector<double>>& seeds, const SearchConfig& config) {
  const std::size_t n = x.size();
  std::vector<Candidate> pool;
  for (const auto& d : seeds) pool.push_back({fb.ratio(x, d), d});
  for (auto& d : detail::quasi_random_directions(n, config.grid_directions)) pool.push_back({fb.ratio(x, d), d});
  std::sort(pool.begin(), pool.end(), better);

  std::vector<std::vector<double>> starts;
  for (std::size_t i = 0; i < pool.size() && starts.size() < config.multistart; ++i)
    starts.push_back(pool[i].direction);
  for (auto& d : detail::random_directions(n, std::max<std::size_t>(1, config.multistart / 2), config.seed))
    starts.push_back(std::move(d));

  std::vector<Candidate> results(starts.size());
  detail::parallel_for(starts.size(), config.threads,
                       [&](std::size_t i) { results[i] = local_search(fb, x, starts[i], config); });
  Candidate best = pool.empty() ? Candidate{} : pool.front();
  best.direction = canonical(best.direction);
  for (const auto& r : results)
    if (better(r, best)) best = r;
  return best;
}

}  // namespace

Rational rho_n(std::size_t n) {
  const Rational base = Rational(1) + Rational(1, static_cast<long>(n));
  return pow(base, static_cast<unsigned>(n)) - Rational(1);
}

Rational delta_n(std::size_t n) {
  const Rational base = Rational(static_cast<long>(n), static_cast<long>(n + 1));
  return pow(base, static_cast<unsigned>(n));
}

Rational CutRatio::exact() const {
  return lower < upper ? upper / lower : lower / upper;
}

double CutRatio::value() const { return infinite ? kInf : exact().to_double(); }

CutRatio ratio_at(const Polytope& body, const Point& x, const Vector& direction) {
  require_interior(body, x);
  if (direction.size() != body.dim()) throw Error(ErrorCode::kDimensionMismatch, "direction has wrong dimension");
  if (std::all_of(direction.begin(), direction.end(), [](const Rational& c) { return c.is_zero(); }))
    throw Error(ErrorCode::kBadSpec, "zero direction");
  return ratio_unchecked(body, x, direction);
}

std::vector<Vector> candidate_directions(const Polytope& body, const Point& x) {
  std::set<Vector> seen;
  std::vector<Vector> out;
  auto add = [&](const Vector& v) {
    if (std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.is_zero(); })) return;
    Vector c = canonical(v);
    if (seen.insert(c).second) out.push_back(std::move(c));
  };
  for (const auto& f : body.facets()) add(f.normal);
  for (const auto& v : body.vertices()) add(v - x);
  return out;
}

AsymmetryReport rho_at_point(const Polytope& body, const Point& x, const SearchConfig& config) {
  require_interior(body, x);
  const std::size_t n = body.dim();
  AsymmetryReport report;
  report.x = x;
  report.rho_n = rho_n(n);
  report.at_centroid = x == body.centroid();

  std::vector<std::vector<double>> seeds;
  for (auto& theta : candidate_directions(body, x)) {
    const CutRatio r = ratio_unchecked(body, x, theta);
    if (config.candidate_seeds) seeds.push_back(detail::normalized(to_doubles(theta)));
    // Interior x never yields an empty side; keep the guard for the sentinel.
    if (r.infinite) continue;
    report.exact_witnesses.push_back({std::move(theta), r.exact()});
  }
  for (std::size_t i = 1; i < report.exact_witnesses.size(); ++i)
    if (report.exact_witnesses[report.best_witness].ratio < report.exact_witnesses[i].ratio) report.best_witness = i;

  const detail::FloatBody fb(body);
  const auto xd = to_doubles(x);
  const Candidate found = search_directions(fb, xd, seeds, config);
  report.search_rho = found.value;
  const double exact_best = report.exact_witnesses.empty() ? 1.0 : report.best().ratio.to_double();
  if (found.value > exact_best) {
    report.rho = found.value;
    report.theta_star = found.direction;
  } else {
    report.rho = exact_best;
    report.theta_star =
        report.exact_witnesses.empty() ? found.direction : canonical(detail::normalized(to_doubles(report.best().theta)));
  }
  report.rho = std::max(report.rho, 1.0);
  report.gap = report.rho_n.to_double() - report.rho;
  report.phi = 1.0 / (report.rho + 1.0);
  report.equality = std::fabs(report.gap) < config.equality_tolerance;
  report.exact_equality = std::any_of(report.exact_witnesses.begin(), report.exact_witnesses.end(),
                                      [&](const ExactWitness& w) { return w.ratio == report.rho_n; });
  if (report.at_centroid) {
    report.certificate = report.rho <= report.rho_n.to_double() + 1e-9 &&
                         std::all_of(report.exact_witnesses.begin(), report.exact_witnesses.end(),
                                     [&](const ExactWitness& w) { return w.ratio <= report.rho_n; });
  }
  return report;
}

AsymmetryReport rho_centroid(const Polytope& body, const SearchConfig& config) {
  return rho_at_point(body, body.centroid(), config);
}

RhoMinResult rho_min(const Polytope& body, const SearchConfig& config) {
  const std::size_t n = body.dim();
  const AsymmetryReport at_centroid = rho_centroid(body, config);
  RhoMinResult result{body.centroid(), at_centroid.rho, at_centroid.rho};
  if (at_centroid.rho <= 1.0 + 1e-12) return result;

  const detail::FloatBody fb(body);
  std::vector<std::vector<double>> probes = detail::quasi_random_directions(n, 200);
  for (const auto& f : body.facets()) probes.push_back(detail::normalized(to_doubles(f.normal)));
  const auto c = to_doubles(body.centroid());
  const double margin0 = fb.interior_margin(c);

  SearchConfig inner = config;
  inner.max_evaluations = 120;
  inner.tolerance = 1e-10;
  auto inner_max = [&](const std::vector<double>& x) {
    if (fb.interior_margin(x) <= 1e-9 * margin0) return kInf;
    Candidate best;
    Candidate second;
    for (const auto& d : probes) {
      Candidate cand{fb.ratio(x, d), d};
      if (better(cand, best)) {
        second = best;
        best = cand;
      } else if (better(cand, second)) {
        second = cand;
      }
    }
    if (n < 2) return best.value;
    double value = best.value;
    for (const auto* start : {&best, &second})
      if (!start->direction.empty()) value = std::max(value, local_search(fb, x, start->direction, inner).value);
    return value;
  };

  const auto nm = detail::nelder_mead(inner_max, c, 0.25 * margin0, 40 * n + 80, 1e-10);
  Point candidate = from_doubles(nm.x);
  if (body.locate(candidate) != Location::kInterior) return result;
  const AsymmetryReport at_candidate = rho_at_point(body, candidate, config);
  if (at_candidate.rho < result.value) {
    result.x = std::move(candidate);
    result.value = at_candidate.rho;
  }
  return result;
}

double phi(const Polytope& body, const SearchConfig& config) { return 1.0 / (rho_min(body, config).value + 1.0); }

}  // namespace centroidcut
