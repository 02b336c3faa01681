#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace centroidcut::detail {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Minimizes f from x0 with an axis-aligned initial simplex of edge `step`.
/// Stops when the spread of simplex values drops below `tolerance` or after
/// `max_evaluations` calls. Non-finite values act as walls.
template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, double step, std::size_t max_evaluations,
                             double tolerance) {
  const std::size_t k = x0.size();
  std::vector<std::vector<double>> pts(k + 1, x0);
  for (std::size_t i = 0; i < k; ++i) pts[i + 1][i] += step;
  std::vector<double> vals(k + 1);
  std::size_t evals = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    vals[i] = f(pts[i]);
    ++evals;
  }
  std::vector<std::size_t> order(k + 1);
  std::vector<double> centroid(k), trial(k), trial2(k);

  auto point_at = [&](double coeff, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < k; ++j) out[j] = centroid[j] + coeff * (worst[j] - centroid[j]);
  };

  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[k > 0 ? k - 1 : 0];
    if (std::isfinite(vals[worst]) && vals[worst] - vals[best] <= tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < k; ++j) centroid[j] += pts[i][j] / static_cast<double>(k);
    }

    point_at(-1.0, trial, pts[worst]);
    const double fr = f(trial);
    ++evals;
    if (fr < vals[best]) {
      point_at(-2.0, trial2, pts[worst]);
      const double fe = f(trial2);
      ++evals;
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    point_at(outside ? -0.5 : 0.5, trial2, pts[worst]);
    const double fc = f(trial2);
    ++evals;
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < k; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      vals[i] = f(pts[i]);
      ++evals;
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return NelderMeadResult{pts[static_cast<std::size_t>(it - vals.begin())], *it, evals};
}

}  // namespace centroidcut::detail
