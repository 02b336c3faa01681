#include "centroidcut/floating_body.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "centroidcut/detail/directions.hpp"
#include "centroidcut/detail/float_body.hpp"
#include "centroidcut/detail/parallel.hpp"
#include "centroidcut/error.hpp"

namespace centroidcut {

namespace {

void check_delta(const Rational& delta) {
  if (delta.sign() <= 0 || delta > Rational(1, 2))
    throw Error(ErrorCode::kBadDelta, "delta must lie in (0, 1/2], got " + delta.str());
}

// Largest multiple of 2^-bits not above x.
Rational floor_dyadic(const Rational& x, unsigned long bits) {
  mpz_class scaled = x.numerator() << bits;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.denominator().get_mpz_t());
  mpz_class den = mpz_class(1) << bits;
  return Rational(mpq_class(q, den));
}

}  // namespace

CutDepth cut_depth(const Polytope& body, const Vector& direction, const Rational& delta) {
  return cut_depth(DirectionalSweep(body, direction), delta);
}

CutDepth cut_depth(const DirectionalSweep& sweep, const Rational& delta) {
  check_delta(delta);
  const Polytope& body = sweep.body();
  const Rational target = delta * body.volume();
  // g decreases from vol - target at the bottom of the support to -target at the top.
  auto g = [&](const Rational& t) { return sweep.upper(t) - target; };

  Rational lo = sweep.min_projection();
  Rational hi = sweep.max_projection();
  const Rational width = hi - lo;
  const Rational tol = width * Rational(mpq_class(1, mpz_class(1) << 64));
  // Grid for Newton iterates, fine enough to never limit the final bracket.
  const unsigned long bits =
      static_cast<unsigned long>(std::max(0.0, 72.0 - std::floor(std::log2(width.to_double()))));

  CutDepth out;
  auto set_exact = [&](const Rational& t) {
    out.t_lo = t;
    out.t_hi = t;
    return out;
  };
  Rational g_lo = g(lo);
  Rational g_hi = g(hi);
  if (g_lo.is_zero()) return set_exact(lo);  // unreachable for delta <= 1/2, kept for safety
  if (g_hi.is_zero()) return set_exact(hi);

  // Double-precision guess.
  {
    const detail::FloatBody fb(body);
    const auto theta = to_doubles(sweep.direction());
    double a = lo.to_double();
    double b = hi.to_double();
    const double tgt = target.to_double();
    for (int it = 0; it < 200 && b - a > 1e-16 * (std::fabs(a) + std::fabs(b) + 1e-300); ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (fb.volume() - fb.cumulative(theta, mid) > tgt ? a : b) = mid;
    }
    const double guess = 0.5 * (a + b);
    const Rational r = width * Rational::from_double(1e-10);
    const Rational t_guess = Rational::from_double(guess);
    // Simple roots (pyramids, symmetric bodies) are found directly.
    const Rational simple = simplest_between(t_guess - r, t_guess + r);
    if (lo < simple && simple < hi) {
      const Rational gs = g(simple);
      if (gs.is_zero()) return set_exact(simple);
      (gs.sign() > 0 ? lo : hi) = simple;
      (gs.sign() > 0 ? g_lo : g_hi) = gs;
    }
    for (const Rational& radius : {width * Rational::from_double(1e-12), width * Rational::from_double(1e-8)}) {
      const Rational a_r = t_guess - radius;
      const Rational b_r = t_guess + radius;
      if (!(lo < a_r && b_r < hi)) continue;
      const Rational ga = g(a_r);
      const Rational gb = g(b_r);
      if (ga.sign() >= 0 && gb.sign() <= 0) {
        if (ga.is_zero()) return set_exact(a_r);
        if (gb.is_zero()) return set_exact(b_r);
        lo = a_r;
        hi = b_r;
        g_lo = ga;
        g_hi = gb;
        break;
      }
    }
  }

  // Safeguarded Newton inside the exact bracket.
  auto absorb = [&](const Rational& t) -> bool {
    const Rational gt = g(t);
    if (gt.is_zero()) {
      set_exact(t);
      return true;
    }
    if (gt.sign() > 0) {
      lo = t;
      g_lo = gt;
    } else {
      hi = t;
      g_hi = gt;
    }
    return false;
  };
  while (hi - lo > tol) {
    const bool from_lo = abs(g_lo) <= abs(g_hi);
    const Rational& x0 = from_lo ? lo : hi;
    const Rational dens = sweep.density(x0, from_lo ? Side::kRight : Side::kLeft);
    Rational cand = (lo + hi) / Rational(2);
    bool newton = false;
    if (dens.sign() > 0) {
      const Rational step = floor_dyadic(x0 + (from_lo ? g_lo : g_hi) / dens, bits);
      if (lo < step && step < hi) {
        cand = step;
        newton = true;
      }
    }
    const Rational before = hi - lo;
    if (absorb(cand)) return out;
    if (newton) {
      // Pin the root from the other side.
      const Rational quarter = tol / Rational(4);
      const Rational probe = g_lo.sign() > 0 && cand == lo ? cand + quarter : cand - quarter;
      if (lo < probe && probe < hi && absorb(probe)) return out;
    }
    if (hi - lo > before / Rational(2) && hi - lo > tol) {
      if (absorb((lo + hi) / Rational(2))) return out;
    }
  }
  // Prefer the simplest rational in the bracket when it is the exact root.
  const Rational simple = simplest_between(lo, hi);
  if (lo < simple && simple < hi && absorb(simple)) return out;
  out.t_lo = lo;
  out.t_hi = hi;
  return out;
}

std::vector<Vector> floating_directions(const Polytope& body, DirectionSet set, std::size_t count,
                                        std::uint64_t seed) {
  const std::size_t n = body.dim();
  std::vector<Vector> out;
  std::set<Vector> seen;
  auto add = [&](const Vector& v) {
    Vector p = primitive(v);
    if (seen.insert(p).second) out.push_back(std::move(p));
  };
  auto add_axes = [&] {
    for (std::size_t k = 0; k < n; ++k)
      for (int s : {1, -1}) {
        Vector e(n, Rational(0));
        e[k] = Rational(s);
        add(e);
      }
  };
  switch (set) {
    case DirectionSet::kAxes: add_axes(); break;
    case DirectionSet::kFacets:
      for (const auto& f : body.facets()) add(scaled(f.normal, Rational(-1)));
      break;
    case DirectionSet::kFull: {
      add_axes();
      for (const auto& f : body.facets()) {
        add(f.normal);
        add(scaled(f.normal, Rational(-1)));
      }
      std::uint64_t round = 0;
      while (out.size() < count) {
        const auto extra = detail::random_directions(n, count - out.size(), seed + 0x51ED27ull * round++);
        for (const auto& d : extra) {
          if (out.size() >= count) break;
          add(detail::rationalize_direction(d));
        }
      }
      break;
    }
  }
  return out;
}

FloatingBodyApprox floating_body_approx(const Polytope& body, const Rational& delta,
                                        const std::vector<Vector>& directions, std::size_t threads) {
  check_delta(delta);
  FloatingBodyApprox approx;
  approx.delta = delta;
  approx.dim = body.dim();
  approx.halfspaces.resize(directions.size());
  detail::parallel_for(directions.size(), threads, [&](std::size_t i) {
    approx.halfspaces[i] = DepthHalfspace{directions[i], cut_depth(body, directions[i], delta)};
  });
  return approx;
}

FloatingBodyApprox floating_body_approx(const Polytope& body, const Rational& delta, std::size_t count,
                                        std::uint64_t seed, DirectionSet set, std::size_t threads) {
  check_delta(delta);
  if (set == DirectionSet::kFull && count < 2 * body.dim())
    throw Error(ErrorCode::kBadSpec, "direction budget must be at least 2n");
  return floating_body_approx(body, delta, floating_directions(body, set, count, seed), threads);
}

bool contains_point(const FloatingBodyApprox& approx, const Point& x) {
  if (x.size() != approx.dim) throw Error(ErrorCode::kDimensionMismatch, "point has wrong dimension");
  return std::all_of(approx.halfspaces.begin(), approx.halfspaces.end(),
                     [&](const DepthHalfspace& h) { return h.contains(x); });
}

Feasibility is_nonempty(const FloatingBodyApprox& approx, const std::optional<Point>& hint) {
  std::vector<Halfspace> system;
  system.reserve(approx.halfspaces.size());
  for (const auto& h : approx.halfspaces) system.push_back({h.theta, h.depth.t_hi});
  return solve_halfspaces(system, approx.dim, hint);
}

PhiInterval phi_estimate(const Polytope& body, const SearchConfig& config, std::size_t count, DirectionSet set,
                         int bisection_steps) {
  const auto report = rho_centroid(body, config);
  PhiInterval out;
  out.lo = 1.0 / (report.rho + 1.0);

  const auto directions = floating_directions(body, set, std::max(count, 2 * body.dim()), config.seed);
  std::vector<DirectionalSweep> sweeps;
  sweeps.reserve(directions.size());
  for (const auto& d : directions) sweeps.emplace_back(body, d);
  std::optional<Point> hint = body.centroid();
  auto nonempty = [&](const Rational& delta) {
    std::vector<Halfspace> system(sweeps.size());
    detail::parallel_for(sweeps.size(), config.threads, [&](std::size_t i) {
      system[i] = Halfspace{directions[i], cut_depth(sweeps[i], delta).t_hi};
    });
    const auto result = solve_halfspaces(system, body.dim(), hint);
    if (result.witness) hint = result.witness;
    return result.nonempty;
  };

  if (nonempty(Rational(1, 2))) {
    out.hi = 0.5;
    return out;
  }
  // lo <= φ keeps the true floating body, hence its outer approximation,
  // nonempty at lo.
  Rational good = simplest_between(Rational::from_double(out.lo * (1.0 - 1e-9)), Rational::from_double(out.lo));
  Rational bad(1, 2);
  if (!nonempty(good)) {
    out.hi = std::max(out.lo, good.to_double());
    return out;
  }
  for (int i = 0; i < bisection_steps; ++i) {
    const Rational mid = (good + bad) / Rational(2);
    (nonempty(mid) ? good : bad) = mid;
  }
  out.hi = bad.to_double();
  return out;
}

}  // namespace centroidcut
