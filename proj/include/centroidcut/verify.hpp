#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "centroidcut/asymmetry.hpp"
#include "centroidcut/generators.hpp"

namespace centroidcut {

struct Tally {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

struct VerifyReport {
  std::string suite;
  std::vector<Tally> invariants;

  [[nodiscard]] bool ok() const;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  std::size_t bodies = 200;
  std::size_t n_min = 2;
  std::size_t n_max = 4;
  std::size_t support_directions = 100;
  std::size_t profile_directions = 3;
  std::size_t profile_grid = 64;
  std::size_t floating_directions = 64;  // N
  std::size_t oracle_grid = 200;
  std::size_t oracle_trials = 2000;
  SearchConfig search;
  std::size_t threads = 1;
};

/// Body i of the seeded random-hull fleet; dimensions cycle n_min..n_max.
BodySpec fleet_spec(const VerifyOptions& options, std::size_t index);

/// Random hulls: centroid certificate, support ratio, concavity of the
/// section profile, floating-body membership and monotonicity.
VerifyReport verify_fleet(const VerifyOptions& options);
/// Pyramids n = 2..5 over several bases plus symmetric controls: exact
/// equality on pyramids only.
VerifyReport verify_pyramids(const VerifyOptions& options);
/// Moment-constrained profile grid: closed forms, oracle bracketing,
/// feasibility frontier and support ratio.
VerifyReport verify_moment_profiles(const VerifyOptions& options);

}  // namespace centroidcut
