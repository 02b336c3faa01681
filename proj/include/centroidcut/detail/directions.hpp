#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "centroidcut/rational.hpp"

namespace centroidcut::detail {

/// Low-discrepancy unit vectors: a Halton sequence pushed through
/// Box-Muller and normalized. Deterministic and seed-free.
std::vector<std::vector<double>> quasi_random_directions(std::size_t dim, std::size_t count);

/// Seeded Gaussian unit vectors.
std::vector<std::vector<double>> random_directions(std::size_t dim, std::size_t count, std::uint64_t seed);

/// Rational direction with coordinates rounded to multiples of 2^-bits.
/// Never returns the zero vector for a nonzero input.
Vector rationalize_direction(const std::vector<double>& direction, int bits = 10);

std::vector<double> normalized(std::vector<double> v);

/// Orthonormal basis of the complement of a unit vector.
std::vector<std::vector<double>> orthogonal_complement(const std::vector<double>& unit);

}  // namespace centroidcut::detail
