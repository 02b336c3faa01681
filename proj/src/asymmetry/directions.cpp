#include "centroidcut/detail/directions.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace centroidcut::detail {

namespace {

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::size_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

std::vector<double> normalized(std::vector<double> v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0)
    for (double& x : v) x /= norm;
  return v;
}

std::vector<std::vector<double>> quasi_random_directions(std::size_t dim, std::size_t count) {
  std::vector<std::vector<double>> out;
  out.reserve(count);
  const std::size_t pairs = (dim + 1) / 2;
  for (std::size_t i = 1; out.size() < count; ++i) {
    std::vector<double> v(dim);
    for (std::size_t p = 0; p < pairs; ++p) {
      const double u1 = radical_inverse(i, kPrimes[2 * p]);
      const double u2 = radical_inverse(i, kPrimes[2 * p + 1]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[2 * p] = r * std::cos(2.0 * std::numbers::pi * u2);
      if (2 * p + 1 < dim) v[2 * p + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    out.push_back(normalized(std::move(v)));
  }
  return out;
}

std::vector<std::vector<double>> random_directions(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<double> v(dim);
    double norm = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      norm += x * x;
    }
    if (norm < 1e-12) continue;
    out.push_back(normalized(std::move(v)));
  }
  return out;
}

Vector rationalize_direction(const std::vector<double>& direction, int bits) {
  const double scale = std::ldexp(1.0, bits);
  Vector out(direction.size());
  bool nonzero = false;
  for (std::size_t k = 0; k < direction.size(); ++k) {
    const long numerator = std::lround(direction[k] * scale);
    nonzero = nonzero || numerator != 0;
    out[k] = Rational(numerator, static_cast<long>(scale));
  }
  if (!nonzero) return rationalize_direction(direction, bits + 8);
  return out;
}

std::vector<std::vector<double>> orthogonal_complement(const std::vector<double>& unit) {
  const std::size_t n = unit.size();
  std::vector<std::vector<double>> basis{unit};
  for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
    std::vector<double> v(n, 0.0);
    v[e] = 1.0;
    for (const auto& b : basis) {
      double proj = 0.0;
      for (std::size_t k = 0; k < n; ++k) proj += v[k] * b[k];
      for (std::size_t k = 0; k < n; ++k) v[k] -= proj * b[k];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    if (norm < 1e-6) continue;
    basis.push_back(normalized(std::move(v)));
  }
  basis.erase(basis.begin());
  return basis;
}

}  // namespace centroidcut::detail
