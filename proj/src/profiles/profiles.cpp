#include "centroidcut/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/detail/parallel.hpp"
#include "centroidcut/error.hpp"
#include "centroidcut/io.hpp"
#include "centroidcut/simd/kernels.hpp"

namespace centroidcut {

namespace {

constexpr std::size_t kChunk = 512;

simd::PowerIntegrals integrals(const std::vector<double>& t, const std::vector<double>& h, unsigned n) {
  return simd::integrate_power(t, h, n - 1);
}

// Concave h with h(0) = 1, slopes[j] on [kinks[j-1], kinks[j]) and the last
// slope continuing to infinity.
struct Shape {
  std::vector<double> slopes;
  std::vector<double> kinks;  // size slopes.size() - 1, increasing, > 0

  // First t > 0 with h(t) = 0, or +inf.
  [[nodiscard]] double zero() const {
    double t0 = 0.0;
    double h0 = 1.0;
    for (std::size_t j = 0; j < slopes.size(); ++j) {
      const double end = j < kinks.size() ? kinks[j] : std::numeric_limits<double>::infinity();
      if (slopes[j] < 0.0) {
        const double z = t0 - h0 / slopes[j];
        if (z <= end) return z;
      }
      if (j < kinks.size()) {
        h0 += slopes[j] * (end - t0);
        t0 = end;
      }
    }
    return std::numeric_limits<double>::infinity();
  }

  [[nodiscard]] ConcaveProfile truncated(double b, unsigned n) const {
    ConcaveProfile p;
    p.n = n;
    p.t.push_back(0.0);
    p.h.push_back(1.0);
    double t0 = 0.0;
    double h0 = 1.0;
    for (std::size_t j = 0; j < slopes.size(); ++j) {
      const double end = j < kinks.size() ? std::min(kinks[j], b) : b;
      h0 = std::max(0.0, h0 + slopes[j] * (end - t0));
      t0 = end;
      if (end > p.t.back()) {
        p.t.push_back(end);
        p.h.push_back(h0);
      }
      if (end >= b) break;
    }
    return p;
  }
};

struct Sample {
  bool feasible = false;
  double mu = 0.0;
  double b = 0.0;
  ConcaveProfile profile;
};

// Solves moment(h on [0, b]) = M for b.
Sample fit_support(const Shape& shape, const MomentSpec& spec) {
  const unsigned n = spec.n;
  auto moment_at = [&](double b) { return moment(shape.truncated(b, n)); };
  double hi = shape.zero();
  Sample s;
  if (std::isfinite(hi)) {
    const double top = moment_at(hi);
    if (top < spec.M * (1.0 - 1e-12)) return s;
    if (top <= spec.M) {
      s.feasible = true;
      s.b = hi;
      s.profile = shape.truncated(hi, n);
      s.mu = mu(s.profile);
      return s;
    }
  } else {
    hi = std::sqrt(spec.M);
    while (moment_at(hi) < spec.M) hi *= 2.0;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (moment_at(mid) < spec.M ? lo : hi) = mid;
  }
  s.feasible = true;
  s.b = 0.5 * (lo + hi);
  s.profile = shape.truncated(s.b, n);
  s.mu = mu(s.profile);
  return s;
}

void absorb(OracleResult& r, const Sample& s) {
  ++r.trials;
  if (!s.feasible) return;
  if (r.feasible == 0 || s.mu < r.mu_lo) {
    r.mu_lo = s.mu;
    r.lo_profile = s.profile;
  }
  if (r.feasible == 0 || s.mu > r.mu_hi) {
    r.mu_hi = s.mu;
    r.hi_profile = s.profile;
  }
  r.b_min = r.feasible == 0 ? s.b : std::min(r.b_min, s.b);
  r.b_max = r.feasible == 0 ? s.b : std::max(r.b_max, s.b);
  ++r.feasible;
}

void merge(OracleResult& into, const OracleResult& part) {
  if (part.feasible > 0) {
    if (into.feasible == 0 || part.mu_lo < into.mu_lo) {
      into.mu_lo = part.mu_lo;
      into.lo_profile = part.lo_profile;
    }
    if (into.feasible == 0 || part.mu_hi > into.mu_hi) {
      into.mu_hi = part.mu_hi;
      into.hi_profile = part.hi_profile;
    }
    into.b_min = into.feasible == 0 ? part.b_min : std::min(into.b_min, part.b_min);
    into.b_max = into.feasible == 0 ? part.b_max : std::max(into.b_max, part.b_max);
  }
  into.feasible += part.feasible;
  into.trials += part.trials;
}

std::uint64_t chunk_seed(std::uint64_t seed, std::size_t chunk) {
  return seed * 0x9E3779B97F4A7C15ull + chunk + 1;
}

ConcaveProfile affine_profile(double b, double slope, unsigned n) {
  ConcaveProfile p;
  p.n = n;
  p.t = {0.0, b};
  p.h = {1.0, std::max(0.0, 1.0 + slope * b)};
  return p;
}

// Integrals of h^{n-1} over [t.front(), c] and [c, t.back()].
std::pair<double, double> split_masses(const std::vector<double>& t, const std::vector<double>& h, unsigned n,
                                       double c) {
  std::vector<double> lt, lh, rt, rh;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < c) {
      lt.push_back(t[i]);
      lh.push_back(h[i]);
    }
  }
  std::size_t k = lt.size();
  double hc = h.back();
  if (k > 0 && k < t.size()) hc = h[k - 1] + (h[k] - h[k - 1]) * (c - t[k - 1]) / (t[k] - t[k - 1]);
  lt.push_back(c);
  lh.push_back(hc);
  rt.push_back(c);
  rh.push_back(hc);
  for (std::size_t i = k; i < t.size(); ++i) {
    if (t[i] > c) {
      rt.push_back(t[i]);
      rh.push_back(h[i]);
    }
  }
  const double left = lt.size() > 1 ? integrals(lt, lh, n).mass : 0.0;
  const double right = rt.size() > 1 ? integrals(rt, rh, n).mass : 0.0;
  return {left, right};
}

}  // namespace

bool ConcaveProfile::valid(double tol) const {
  if (t.size() < 2 || t.size() != h.size() || n < 1) return false;
  if (std::fabs(t.front()) > tol || std::fabs(h.front() - 1.0) > tol) return false;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i] < t[i + 1])) return false;
  for (double v : h)
    if (v < -tol) return false;
  for (std::size_t i = 0; i + 2 < t.size(); ++i) {
    const double s1 = (h[i + 1] - h[i]) / (t[i + 1] - t[i]);
    const double s2 = (h[i + 2] - h[i + 1]) / (t[i + 2] - t[i + 1]);
    if (s2 > s1 + tol * std::max(1.0, std::fabs(s1))) return false;
  }
  return true;
}

std::string ConcaveProfile::to_csv() const {
  std::string out = "t,h,f\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out += io::format_double(t[i]) + "," + io::format_double(h[i]) + "," +
           io::format_double(std::pow(h[i], static_cast<double>(n - 1))) + "\n";
  return out;
}

double mu(const ConcaveProfile& p) { return integrals(p.t, p.h, p.n).mass; }
double moment(const ConcaveProfile& p) { return integrals(p.t, p.h, p.n).moment; }

double feasibility_threshold(const MomentSpec& spec) {
  if (!(spec.M > 0.0) || !std::isfinite(spec.M)) throw Error(ErrorCode::kBadSpec, "M must be positive");
  if (spec.n < 1) throw Error(ErrorCode::kBadSpec, "n must be >= 1");
  return -1.0 / std::sqrt(spec.M * spec.n * (spec.n + 1.0));
}

bool is_feasible(const MomentSpec& spec) {
  (void)feasibility_threshold(spec);  // validates M and n
  if (spec.m >= 0.0) return true;
  // m >= -1/sqrt(M n (n+1))  <=>  m^2 M n (n+1) <= 1
  return spec.m * spec.m * spec.M * spec.n * (spec.n + 1.0) <= 1.0 + 1e-12;
}

Extremal min_mu(const MomentSpec& spec) {
  if (!is_feasible(spec)) throw Error(ErrorCode::kInfeasible, "moment spec is infeasible");
  const double b = std::sqrt(spec.M * spec.n * (spec.n + 1.0));
  Extremal e;
  e.b = b;
  e.mu = b / spec.n;
  e.profile = affine_profile(b, -1.0 / b, spec.n);
  return e;
}

Extremal max_mu(const MomentSpec& spec) {
  if (!is_feasible(spec)) throw Error(ErrorCode::kInfeasible, "moment spec is infeasible");
  const double m = spec.m;
  auto moment_at = [&](double b) { return moment(affine_profile(b, m, spec.n)); };
  double lo = 0.0;
  double hi;
  if (m < 0.0) {
    hi = -1.0 / m;
    if (moment_at(hi) <= spec.M) lo = hi;  // boundary: the whole support is needed
  } else {
    hi = std::sqrt(2.0 * spec.M);  // h >= 1 makes the moment at least b^2 / 2
  }
  for (int it = 0; it < 300 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (moment_at(mid) < spec.M ? lo : hi) = mid;
  }
  Extremal e;
  e.b = 0.5 * (lo + hi);
  e.profile = affine_profile(e.b, m, spec.n);
  e.mu = mu(e.profile);
  return e;
}

OracleResult search_profiles(const MomentSpec& spec, std::size_t grid_size, std::size_t trials, std::uint64_t seed,
                             std::size_t threads) {
  (void)feasibility_threshold(spec);
  const double b0 = std::sqrt(spec.M * spec.n * (spec.n + 1.0));
  const double span = 2.0 / b0 + std::fabs(spec.m);

  OracleResult result;
  // Affine sweep: slopes m, m - span/(g-1), ..., m - span.
  const std::size_t g = std::max<std::size_t>(grid_size, 2);
  for (std::size_t i = 0; i < g; ++i) {
    const double slope = spec.m - span * static_cast<double>(i) / static_cast<double>(g - 1);
    absorb(result, fit_support(Shape{{slope}, {}}, spec));
  }

  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<OracleResult> parts(chunks);
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    std::mt19937_64 rng(chunk_seed(seed, c));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t count = std::min(kChunk, trials - c * kChunk);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t segments = 2 + (rng() % 2);
      Shape shape;
      shape.slopes.push_back(spec.m - span * u(rng));
      for (std::size_t j = 1; j < segments; ++j) shape.slopes.push_back(shape.slopes.back() - span * u(rng));
      for (std::size_t j = 1; j < segments; ++j) shape.kinks.push_back(2.0 * b0 * u(rng));
      std::sort(shape.kinks.begin(), shape.kinks.end());
      if (shape.kinks.front() <= 0.0) continue;
      absorb(parts[c], fit_support(shape, spec));
    }
  });
  for (const auto& p : parts) merge(result, p);
  return result;
}

OracleResult brute_force_extremals(const MomentSpec& spec, std::size_t grid_size, std::size_t trials,
                                   std::uint64_t seed, std::size_t threads) {
  if (!is_feasible(spec)) throw Error(ErrorCode::kInfeasible, "moment spec is infeasible");
  return search_profiles(spec, grid_size, trials, seed, threads);
}

SupportRatio support_ratio_extremes(const MomentSpec& spec, std::size_t trials, std::uint64_t seed) {
  if (!is_feasible(spec)) throw Error(ErrorCode::kInfeasible, "moment spec is infeasible");
  const auto oracle = search_profiles(spec, 200, trials, seed);
  SupportRatio r;
  r.b_min = std::min(oracle.b_min, max_mu(spec).b);
  r.b_max = std::max(oracle.b_max, min_mu(spec).b);
  r.bound_applies = spec.m <= 0.0;
  r.within_bound = r.b_max <= (spec.n + 1e-6) * r.b_min;
  return r;
}

double centroid_split_ratio(const std::vector<double>& t, const std::vector<double>& h, unsigned n) {
  const auto whole = integrals(t, h, n);
  const double c = whole.moment / whole.mass;
  const auto [left, right] = split_masses(t, h, n, c);
  const double small = std::min(left, right);
  if (!(small > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(left, right) / small;
}

SplitCertificate split_ratio_certificate(unsigned n, std::size_t grid_size, std::size_t trials, std::uint64_t seed,
                                          std::size_t threads) {
  if (n < 1) throw Error(ErrorCode::kBadSpec, "n must be >= 1");
  const std::size_t g = std::max<std::size_t>(grid_size, 3);
  SplitCertificate report;
  report.n = n;
  report.trials = trials;
  report.bound = rho_n(n).to_double();
  report.affine_ratio = centroid_split_ratio({0.0, 1.0}, {0.0, 1.0}, n);

  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<double> best(chunks, 1.0);
  std::vector<std::size_t> bad(chunks, 0);
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    std::mt19937_64 rng(chunk_seed(seed, c));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> gauss;
    const std::size_t count = std::min(kChunk, trials - c * kChunk);
    std::vector<double> t(g), h(g), slopes(g - 1);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t k = 0; k < g; ++k) t[k] = static_cast<double>(k) / static_cast<double>(g - 1);
      if (i % 2 == 0) {
        for (auto& s : slopes) s = gauss(rng);
      } else {
        // Few distinct slopes: near the affine extremal.
        const std::size_t pieces = 1 + rng() % 3;
        std::vector<double> levels(pieces);
        for (auto& s : levels) s = gauss(rng);
        std::vector<std::size_t> cuts(pieces - 1);
        for (auto& k : cuts) k = rng() % (g - 1);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t k = 0; k + 1 < g; ++k)
          slopes[k] = levels[static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), k) - cuts.begin())];
      }
      std::sort(slopes.begin(), slopes.end(), std::greater<>());
      h[0] = 0.0;
      for (std::size_t k = 1; k < g; ++k) h[k] = h[k - 1] + slopes[k - 1] * (t[k] - t[k - 1]);
      // Concave, so the minimum is at an endpoint; lift it to a random
      // nonnegative level (zero half the time).
      const double lift = (rng() % 2 == 0) ? 0.0 : u(rng);
      const double low = std::min(h.front(), h.back());
      double top = 0.0;
      for (auto& v : h) {
        v = v - low + lift;
        top = std::max(top, v);
      }
      if (!(top > 0.0)) continue;
      const double r = centroid_split_ratio(t, h, n);
      best[c] = std::max(best[c], r);
      if (r > report.bound + 1e-9) ++bad[c];
    }
  });
  for (std::size_t c = 0; c < chunks; ++c) {
    report.max_ratio = std::max(report.max_ratio, best[c]);
    report.violations += bad[c];
  }
  return report;
}

}  // namespace centroidcut
