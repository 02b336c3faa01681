#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "centroidcut/floating_body.hpp"

namespace centroidcut::detail {

/// Fourier-Motzkin with Chernikov pruning; nullopt once a stage would
/// combine more than `pair_budget` row pairs.
std::optional<Feasibility> fourier_motzkin(const std::vector<Halfspace>& system, std::size_t dim,
                                           std::size_t pair_budget);
/// Exact phase-one simplex, Bland's rule.
Feasibility simplex_feasibility(const std::vector<Halfspace>& system, std::size_t dim);

}  // namespace centroidcut::detail
