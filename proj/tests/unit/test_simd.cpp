#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "centroidcut/simd/kernels.hpp"

using namespace centroidcut::simd;

namespace {

bool close(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::max(1.0, std::fabs(b)); }

std::vector<Level> levels() {
  std::vector<Level> out{Level::kScalar};
  if (level_available(Level::kAvx2)) out.push_back(Level::kAvx2);
  return out;
}

}  // namespace

TEST_CASE("integrate_power closed forms") {
  const std::vector<double> t{0.0, 1.0};
  const std::vector<double> h{1.0, 0.0};
  for (Level level : levels()) {
    CAPTURE(to_string(level));
    auto r = integrate_power(t, h, 1, level);
    CHECK(close(r.mass, 0.5, 1e-15));
    CHECK(close(r.moment, 1.0 / 6.0, 1e-15));
    // ∫ (1-t)^3 = 1/4, ∫ t (1-t)^3 = 1/20
    r = integrate_power(t, h, 3, level);
    CHECK(close(r.mass, 0.25, 1e-15));
    CHECK(close(r.moment, 0.05, 1e-15));
    // constant 2 on [-1, 3], p = 2: mass 16, moment 16
    const std::vector<double> t2{-1.0, 0.5, 3.0};
    const std::vector<double> h2{2.0, 2.0, 2.0};
    r = integrate_power(t2, h2, 2, level);
    CHECK(close(r.mass, 16.0, 1e-15));
    CHECK(close(r.moment, 16.0, 1e-14));
  }
}

TEST_CASE("scalar and avx2 kernels agree") {
  if (!level_available(Level::kAvx2)) return;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t knots : {2u, 3u, 4u, 5u, 7u, 16u, 33u, 257u}) {
    std::vector<double> t(knots), h(knots);
    double acc = -1.0;
    for (std::size_t i = 0; i < knots; ++i) {
      acc += 0.01 + std::fabs(u(rng));
      t[i] = acc;
      h[i] = std::fabs(u(rng));
    }
    for (unsigned p = 0; p <= 6; ++p) {
      const auto a = integrate_power(t, h, p, Level::kScalar);
      const auto b = integrate_power(t, h, p, Level::kAvx2);
      CHECK(close(b.mass, a.mass, 1e-12));
      CHECK(close(b.moment, a.moment, 1e-12));
    }
  }
  for (std::size_t dim = 1; dim <= 6; ++dim) {
    for (std::size_t count : {1u, 3u, 4u, 5u, 8u, 13u, 100u}) {
      std::vector<std::vector<double>> cols(dim, std::vector<double>(count));
      std::vector<const double*> ptrs;
      for (auto& c : cols) {
        for (double& x : c) x = u(rng);
        ptrs.push_back(c.data());
      }
      std::vector<double> dir(dim);
      for (double& x : dir) x = u(rng);
      std::vector<double> a(count), b(count);
      project(ptrs, dir, a, Level::kScalar);
      project(ptrs, dir, b, Level::kAvx2);
      for (std::size_t i = 0; i < count; ++i) CHECK(close(b[i], a[i], 1e-12));
    }
  }
}

TEST_CASE("project matches hand computation") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> y{0.5, -1.0, 0.0, 2.0, 1.0};
  const std::vector<const double*> cols{x.data(), y.data()};
  const std::vector<double> dir{2.0, 4.0};
  for (Level level : levels()) {
    std::vector<double> out(5);
    project(cols, dir, out, level);
    CHECK(out == std::vector<double>{4.0, 0.0, 6.0, 16.0, 14.0});
  }
}
