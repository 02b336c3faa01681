#include <cmath>
#include <random>

#include "doctest.h"

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/generators.hpp"
#include "centroidcut/profiles.hpp"

using namespace centroidcut;

namespace {

ConcaveProfile make_profile(std::vector<double> t, std::vector<double> h, unsigned n) {
  ConcaveProfile p;
  p.t = std::move(t);
  p.h = std::move(h);
  p.n = n;
  return p;
}

bool rel_close(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::max(1e-300, std::fabs(b)); }

std::vector<MomentSpec> spec_grid() {
  std::vector<MomentSpec> out;
  for (unsigned n = 1; n <= 5; ++n)
    for (double M : {1.0 / 12.0, 1.0 / 6.0, 1.0, 5.0}) {
      const double th = -1.0 / std::sqrt(M * n * (n + 1.0));
      for (double m : {th, th / 2.0, 0.0, 1.0}) out.push_back({M, m, n});
    }
  return out;
}

}  // namespace

TEST_CASE("mu and moment of simple profiles") {
  auto p = make_profile({0.0, 1.0}, {1.0, 0.0}, 2);
  CHECK(mu(p) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(moment(p) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  p = make_profile({0.0, 1.0}, {1.0, 1.0}, 1);
  CHECK(mu(p) == doctest::Approx(1.0));
  CHECK(moment(p) == doctest::Approx(0.5));
  p = make_profile({0.0, 2.0}, {1.0, 0.0}, 3);
  CHECK(mu(p) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(moment(p) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Splitting a segment changes nothing.
  auto q = make_profile({0.0, 0.5, 2.0}, {1.0, 0.75, 0.0}, 3);
  CHECK(mu(q) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(q.valid());
  CHECK_FALSE(make_profile({0.0, 1.0, 2.0}, {1.0, 0.5, 0.6}, 2).valid());
  CHECK_FALSE(make_profile({0.0, 1.0}, {0.5, 0.0}, 2).valid());
}

TEST_CASE("feasibility") {
  CHECK_FALSE(is_feasible({1.0, -1.0, 1}));
  CHECK(is_feasible({1.0 / 6.0, -1.0, 2}));
  CHECK(is_feasible({1.0, 0.0, 3}));
  CHECK_THROWS_AS(is_feasible({0.0, 0.0, 2}), Error);
  CHECK_THROWS_AS(is_feasible({1.0, 0.0, 0}), Error);
  for (const auto& s : spec_grid()) {
    const double th = feasibility_threshold(s);
    CHECK(is_feasible({s.M, th * (1.0 - 1e-6), s.n}));
    CHECK_FALSE(is_feasible({s.M, th * (1.0 + 1e-6), s.n}));
  }
  CHECK_THROWS_AS(min_mu({1.0, -1.0, 1}), Error);
  CHECK_THROWS_AS(max_mu({1.0, -1.0, 1}), Error);
}

TEST_CASE("closed-form extremals") {
  auto e = min_mu({1.0 / 6.0, 0.0, 2});
  CHECK(e.b == doctest::Approx(1.0));
  CHECK(e.mu == doctest::Approx(0.5));
  e = min_mu({1.0, 0.0, 1});
  CHECK(e.b == doctest::Approx(std::sqrt(2.0)));
  CHECK(e.mu == doctest::Approx(std::sqrt(2.0)));
  e = min_mu({1.0 / 12.0, 0.0, 3});
  CHECK(e.b == doctest::Approx(1.0));
  CHECK(e.mu == doctest::Approx(1.0 / 3.0));

  e = max_mu({1.0 / 6.0, 0.0, 2});
  CHECK(e.b == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(e.mu == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  e = max_mu({1.0 / 6.0, -1.0, 2});
  CHECK(e.b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.mu == doctest::Approx(0.5).epsilon(1e-12));
  for (double m : {-0.5, 0.0, 3.0}) CHECK(max_mu({0.5, m, 1}).mu == doctest::Approx(1.0).epsilon(1e-12));

  for (const auto& s : spec_grid()) {
    CAPTURE(s.n);
    CAPTURE(s.M);
    CAPTURE(s.m);
    const auto lo = min_mu(s);
    const auto hi = max_mu(s);
    CHECK(rel_close(lo.b, std::sqrt(s.M * s.n * (s.n + 1.0)), 1e-15));
    CHECK(rel_close(mu(lo.profile), lo.mu, 1e-10));
    CHECK(rel_close(moment(lo.profile), s.M, 1e-10));
    CHECK(rel_close(moment(hi.profile), s.M, 1e-10));
    CHECK(lo.mu <= hi.mu * (1.0 + 1e-12));
    CHECK(lo.profile.valid(1e-12));
    CHECK(hi.profile.valid(1e-12));
  }
}

TEST_CASE("oracle brackets the closed forms") {
  for (const auto& s : spec_grid()) {
    CAPTURE(s.n);
    CAPTURE(s.M);
    CAPTURE(s.m);
    const auto r = brute_force_extremals(s, 200, 2000, 5);
    const double lo = min_mu(s).mu;
    const double hi = max_mu(s).mu;
    REQUIRE(r.feasible > 0);
    CHECK(r.mu_lo >= lo - 1e-9);
    CHECK(r.mu_hi <= hi + 1e-9);
    CHECK(r.mu_lo <= lo * 1.02);
    CHECK(r.mu_hi >= hi * 0.98);
    CHECK(r.lo_profile.valid(1e-9));
    CHECK(rel_close(moment(r.lo_profile), s.M, 1e-9));
  }
  const auto r = brute_force_extremals({1.0 / 6.0, 0.0, 2}, 200, 1000, 1);
  CHECK(r.mu_lo >= 0.5);
  CHECK(r.mu_lo <= 0.51);
  CHECK(r.mu_hi >= 0.566);
  CHECK(r.mu_hi <= 1.0 / std::sqrt(3.0) + 1e-9);
  const auto one = brute_force_extremals({0.7, -0.2, 1}, 50, 500, 2);
  CHECK(one.mu_lo == doctest::Approx(std::sqrt(1.4)).epsilon(1e-12));
  CHECK(one.mu_hi == doctest::Approx(std::sqrt(1.4)).epsilon(1e-12));
}

TEST_CASE("oracle at and across the feasibility frontier") {
  for (const auto& s : spec_grid()) {
    const double th = feasibility_threshold(s);
    CHECK(search_profiles({s.M, th * (1.0 + 1e-6), s.n}, 200, 500, 3).feasible == 0);
    CHECK(search_profiles({s.M, th * (1.0 - 1e-6), s.n}, 200, 500, 3).feasible > 0);
    const auto at = brute_force_extremals({s.M, th, s.n}, 200, 500, 3);
    CHECK(at.mu_hi == doctest::Approx(at.mu_lo).epsilon(1e-6));
  }
  CHECK_THROWS_AS(brute_force_extremals({1.0, -1.0, 1}, 10, 10, 1), Error);
}

TEST_CASE("oracle is deterministic and thread-count independent") {
  const MomentSpec s{1.0, -0.1, 3};
  const auto a = brute_force_extremals(s, 100, 3000, 9, 1);
  const auto b = brute_force_extremals(s, 100, 3000, 9, 3);
  CHECK(a.mu_lo == b.mu_lo);
  CHECK(a.mu_hi == b.mu_hi);
  CHECK(a.b_max == b.b_max);
  CHECK(a.feasible == b.feasible);
}

TEST_CASE("support ratio extremes") {
  auto r = support_ratio_extremes({1.0 / 6.0, 0.0, 2});
  CHECK(r.b_max / r.b_min <= 2.0);
  CHECK(r.within_bound);
  r = support_ratio_extremes({0.3, -0.4, 1});
  CHECK(r.b_max == doctest::Approx(r.b_min));
  const MomentSpec edge{1.0, feasibility_threshold({1.0, 0.0, 3}), 3};
  r = support_ratio_extremes(edge);
  CHECK(r.b_min == doctest::Approx(std::sqrt(12.0)).epsilon(1e-6));
  CHECK(r.b_max == doctest::Approx(std::sqrt(12.0)).epsilon(1e-6));
  for (const auto& s : spec_grid()) {
    if (s.m > 0.0) continue;
    CHECK(support_ratio_extremes(s, 500).within_bound);
  }
  // A positive slope cap lets h grow, and the bound no longer holds.
  r = support_ratio_extremes({5.0, 1.0, 2}, 500);
  CHECK_FALSE(r.bound_applies);
  CHECK(r.b_max / r.b_min > 2.0);
}

TEST_CASE("centroid split of concave profiles") {
  CHECK(centroid_split_ratio({0.0, 1.0}, {0.0, 1.0}, 2) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(centroid_split_ratio({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}, 3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(centroid_split_ratio({-2.0, 2.0}, {0.7, 0.7}, 4) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  const std::vector<double> t{-0.3, 0.1, 0.6, 1.0};
  const std::vector<double> h{0.2, 0.9, 1.0, 0.4};
  for (unsigned n = 2; n <= 4; ++n) {
    const double base = centroid_split_ratio(t, h, n);
    for (int i = 0; i < 10; ++i) {
      // f -> alpha f(beta .) is h -> alpha^{1/(n-1)} h(beta .)
      const double alpha = u(rng);
      const double beta = u(rng);
      std::vector<double> ts, hs;
      for (std::size_t k = 0; k < t.size(); ++k) {
        ts.push_back(t[k] / beta);
        hs.push_back(std::pow(alpha, 1.0 / (n - 1)) * h[k]);
      }
      CHECK(centroid_split_ratio(ts, hs, n) == doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("split ratio certificate over concave profiles") {
  for (unsigned n = 1; n <= 5; ++n) {
    const auto r = split_ratio_certificate(n, 32, 2000, 11);
    CAPTURE(n);
    CHECK(r.violations == 0);
    CHECK(r.max_ratio <= rho_n(n).to_double() + 1e-9);
    CHECK(std::fabs(r.affine_ratio - rho_n(n).to_double()) <= 1e-9);
  }
}

TEST_CASE("affine profile ratio matches pyramid bodies") {
  for (unsigned n = 2; n <= 4; ++n) {
    BodySpec s;
    s.kind = BodyKind::kPyramid;
    s.n = n;
    const auto g = make(s);
    const auto rep = rho_centroid(g.body, SearchConfig{});
    CHECK(split_ratio_certificate(n, 8, 10, 1).affine_ratio == doctest::Approx(rep.best().ratio.to_double()).epsilon(1e-9));
  }
}
