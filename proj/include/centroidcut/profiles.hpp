#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace centroidcut {

/// Piecewise-linear h on [t.front(), t.back()], f = h^{n-1}.
struct ConcaveProfile {
  std::vector<double> t;
  std::vector<double> h;
  unsigned n = 2;

  [[nodiscard]] double b() const { return t.back(); }
  /// h(0) = 1 at t = 0, increasing grid, h >= 0, nonincreasing slopes
  /// (all up to `tol`).
  [[nodiscard]] bool valid(double tol = 1e-12) const;
  [[nodiscard]] std::string to_csv() const;
};

double mu(const ConcaveProfile& p);      // ∫ f
double moment(const ConcaveProfile& p);  // ∫ t f

struct MomentSpec {
  double M = 1.0;  // target moment
  double m = 0.0;  // cap on the right derivative of h at 0
  unsigned n = 2;
};

/// -1 / sqrt(M n (n+1)); throws BadSpec unless M > 0 and n >= 1.
double feasibility_threshold(const MomentSpec& spec);
/// m >= threshold, with the boundary counted feasible (relative slack 1e-12).
bool is_feasible(const MomentSpec& spec);

struct Extremal {
  double mu = 0.0;
  double b = 0.0;
  ConcaveProfile profile;
};

/// Affine h = 1 - t/b, b = sqrt(M n (n+1)). Throws Infeasible.
Extremal min_mu(const MomentSpec& spec);
/// h = 1 + m t on [0, b] with moment M. Throws Infeasible.
Extremal max_mu(const MomentSpec& spec);

struct OracleResult {
  double mu_lo = 0.0;
  double mu_hi = 0.0;
  double b_min = 0.0;
  double b_max = 0.0;
  std::size_t feasible = 0;  // profiles meeting all constraints
  std::size_t trials = 0;
  ConcaveProfile lo_profile;
  ConcaveProfile hi_profile;
};

/// Samples concave profiles with h(0) = 1 and initial slope <= m: a
/// `grid_size` sweep of affine slopes (including m itself) plus `trials`
/// seeded two- and three-segment profiles. Each shape's support end is
/// solved so the moment equals M; shapes that cannot reach M are counted
/// infeasible. Does not check feasibility itself.
OracleResult search_profiles(const MomentSpec& spec, std::size_t grid_size, std::size_t trials, std::uint64_t seed,
                             std::size_t threads = 1);
/// search_profiles after an is_feasible check (throws Infeasible).
OracleResult brute_force_extremals(const MomentSpec& spec, std::size_t grid_size, std::size_t trials,
                                   std::uint64_t seed, std::size_t threads = 1);

struct SupportRatio {
  double b_min = 0.0;
  double b_max = 0.0;
  bool bound_applies = false;  // m <= 0
  bool within_bound = true;    // b_max / b_min <= n + 1e-6
};

SupportRatio support_ratio_extremes(const MomentSpec& spec, std::size_t trials = 2000, std::uint64_t seed = 1);

/// Ratio of the larger to the smaller mass of f = h^{n-1} on either side
/// of its centroid, for a nonnegative concave h on any interval.
double centroid_split_ratio(const std::vector<double>& t, const std::vector<double>& h, unsigned n);

struct SplitCertificate {
  unsigned n = 0;
  std::size_t trials = 0;
  double max_ratio = 1.0;
  double affine_ratio = 1.0;  // h(t) = t on [0, 1]
  double bound = 1.0;         // rho_n
  std::size_t violations = 0;  // samples above bound + 1e-9
};

SplitCertificate split_ratio_certificate(unsigned n, std::size_t grid_size, std::size_t trials, std::uint64_t seed,
                                         std::size_t threads = 1);

}  // namespace centroidcut
