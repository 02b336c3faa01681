#include <algorithm>
#include <cstdint>
#include <map>

#include "centroidcut/detail/feasibility.hpp"
#include "centroidcut/error.hpp"

namespace centroidcut {

namespace {

// Elimination hands over to the simplex route once a stage would combine
// more row pairs than this.
constexpr std::size_t kPairBudget = 200000;

struct Row {
  Vector a;
  Rational b;
  std::vector<std::uint64_t> history;  // original rows combined into this one
};

std::size_t popcount(const std::vector<std::uint64_t>& bits) {
  std::size_t c = 0;
  for (auto w : bits) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

// Scale so the first nonzero coefficient has magnitude 1; keeps the
// inequality direction.
void normalize(Row& r) {
  for (const auto& c : r.a) {
    if (c.is_zero()) continue;
    const Rational s = abs(c);
    if (s == Rational(1)) return;
    for (auto& x : r.a) x /= s;
    r.b /= s;
    return;
  }
}

// Merges identical rows, keeping the smallest history. Rows that differ
// only in the right-hand side are all kept: dropping the looser one would
// be sound, but its history may be the one the pruning rule needs.
std::vector<Row> dedupe(std::vector<Row> rows) {
  std::map<std::pair<Vector, Rational>, std::size_t> index;
  std::vector<Row> out;
  for (auto& r : rows) {
    normalize(r);
    auto [it, inserted] = index.emplace(std::make_pair(r.a, r.b), out.size());
    if (inserted) {
      out.push_back(std::move(r));
    } else if (popcount(r.history) < popcount(out[it->second].history)) {
      out[it->second] = std::move(r);
    }
  }
  return out;
}

bool holds(const std::vector<Halfspace>& system, const Point& x) {
  return std::all_of(system.begin(), system.end(), [&](const Halfspace& h) { return h.contains(x); });
}


struct Bounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

// Bounds on x_k from `rows`, with the other coordinates taken from x.
Bounds bounds_for(const std::vector<Row>& rows, std::size_t k, const Point& x) {
  Bounds out;
  for (const auto& r : rows) {
    const int s = r.a[k].sign();
    if (s == 0) continue;
    Rational rhs = r.b;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != k && !r.a[j].is_zero()) rhs -= r.a[j] * x[j];
    const Rational bound = rhs / r.a[k];
    if (s > 0) {
      if (!out.upper || bound < *out.upper) out.upper = bound;
    } else {
      if (!out.lower || bound > *out.lower) out.lower = bound;
    }
  }
  return out;
}

bool has_negative_constant(const std::vector<Row>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const Row& r) {
    return r.b.sign() < 0 && std::all_of(r.a.begin(), r.a.end(), [](const Rational& c) { return c.is_zero(); });
  });
}

}  // namespace

namespace detail {

std::optional<Feasibility> fourier_motzkin(const std::vector<Halfspace>& system, std::size_t dim,
                                           std::size_t pair_budget) {
  const std::size_t words = (system.size() + 63) / 64;
  std::vector<Row> rows;
  for (std::size_t i = 0; i < system.size(); ++i) {
    Row r{system[i].normal, system[i].offset, std::vector<std::uint64_t>(words, 0)};
    r.history[i / 64] |= std::uint64_t{1} << (i % 64);
    rows.push_back(std::move(r));
  }
  rows = dedupe(std::move(rows));
  if (has_negative_constant(rows)) return Feasibility{false, std::nullopt};

  // stages[s] is the system before order[s] is eliminated.
  std::vector<std::vector<Row>> stages;
  std::vector<std::size_t> order;
  std::vector<bool> done(dim, false);
  for (std::size_t step = 0; step < dim; ++step) {
    // Fewest sign pairs first.
    std::size_t var = dim;
    std::size_t best = 0;
    for (std::size_t k = 0; k < dim; ++k) {
      if (done[k]) continue;
      std::size_t p = 0, q = 0;
      for (const auto& r : rows) {
        const int s = r.a[k].sign();
        p += s > 0;
        q += s < 0;
      }
      if (var == dim || p * q < best) {
        var = k;
        best = p * q;
      }
    }
    done[var] = true;
    order.push_back(var);

    if (step + 1 == dim) {
      // Single variable left: compare its bounds directly.
      stages.push_back(std::move(rows));
      const Bounds b = bounds_for(stages.back(), var, Point(dim, Rational(0)));
      if (b.lower && b.upper && *b.upper < *b.lower) return Feasibility{false, std::nullopt};
      break;
    }
    if (best > pair_budget) return std::nullopt;

    std::vector<Row> pos, neg, next;
    for (auto& r : rows) {
      const int s = r.a[var].sign();
      (s > 0 ? pos : (s < 0 ? neg : next)).push_back(r);
    }
    stages.push_back(std::move(rows));
    // Chernikov: a combination of more than step+2 originals after step+1
    // eliminations is implied by the others.
    const std::size_t limit = step + 2;
    std::vector<std::uint64_t> merged(words);
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        for (std::size_t w = 0; w < words; ++w) merged[w] = p.history[w] | q.history[w];
        if (popcount(merged) > limit) continue;
        const Rational cp = -q.a[var];
        const Rational cq = p.a[var];
        Row r{Vector(dim), cp * p.b + cq * q.b, merged};
        for (std::size_t j = 0; j < dim; ++j) r.a[j] = cp * p.a[j] + cq * q.a[j];
        r.a[var] = Rational(0);
        next.push_back(std::move(r));
      }
    }
    rows = dedupe(std::move(next));
    if (has_negative_constant(rows)) return Feasibility{false, std::nullopt};
  }

  Point x(dim, Rational(0));
  for (std::size_t s = dim; s-- > 0;) {
    const Bounds b = bounds_for(stages[s], order[s], x);
    if (b.lower && b.upper) {
      if (*b.upper < *b.lower) throw Error(ErrorCode::kInfeasible, "elimination inconsistency");
      x[order[s]] = (*b.lower + *b.upper) / Rational(2);
    } else if (b.lower) {
      x[order[s]] = *b.lower + Rational(1);
    } else if (b.upper) {
      x[order[s]] = *b.upper - Rational(1);
    }
  }
  return Feasibility{true, x};
}

// Dictionary form:
//   w_i = b_i - a_i.(u - v) + s >= 0,  u, v, s >= 0,  maximize -s.
// The system is feasible iff the optimum is 0.
Feasibility simplex_feasibility(const std::vector<Halfspace>& system, std::size_t dim) {
  const std::size_t m = system.size();
  const std::size_t nv = 2 * dim + 1;
  const std::size_t s_var = 2 * dim;
  // Variable ids: u_j = j, v_j = dim + j, s = 2 dim, slack i = nv + i.
  std::vector<std::size_t> basic(m), nonbasic(nv);
  for (std::size_t i = 0; i < m; ++i) basic[i] = nv + i;
  for (std::size_t j = 0; j < nv; ++j) nonbasic[j] = j;
  std::vector<Rational> rhs(m);
  std::vector<Vector> coef(m, Vector(nv));
  for (std::size_t i = 0; i < m; ++i) {
    rhs[i] = system[i].offset;
    for (std::size_t j = 0; j < dim; ++j) {
      coef[i][j] = -system[i].normal[j];
      coef[i][dim + j] = system[i].normal[j];
    }
    coef[i][s_var] = Rational(1);
  }
  Vector obj(nv);
  Rational obj0;
  obj[s_var] = Rational(-1);

  auto substitute = [&](Rational& constant, Vector& row, const Rational& new_rhs, const Vector& new_row,
                        std::size_t col) {
    const Rational f = row[col];
    if (f.is_zero()) return;
    constant += f * new_rhs;
    for (std::size_t j = 0; j < nv; ++j) row[j] = j == col ? f * new_row[j] : row[j] + f * new_row[j];
  };
  auto pivot = [&](std::size_t r, std::size_t c) {
    const Rational inv = Rational(1) / coef[r][c];
    Vector new_row(nv);
    for (std::size_t j = 0; j < nv; ++j) new_row[j] = j == c ? inv : -coef[r][j] * inv;
    const Rational new_rhs = -rhs[r] * inv;
    for (std::size_t i = 0; i < m; ++i)
      if (i != r) substitute(rhs[i], coef[i], new_rhs, new_row, c);
    substitute(obj0, obj, new_rhs, new_row, c);
    coef[r] = std::move(new_row);
    rhs[r] = new_rhs;
    std::swap(basic[r], nonbasic[c]);
  };

  std::size_t worst = m;
  for (std::size_t i = 0; i < m; ++i)
    if (rhs[i].sign() < 0 && (worst == m || rhs[i] < rhs[worst])) worst = i;
  if (worst < m) {
    pivot(worst, s_var);
    while (true) {
      std::size_t c = nv;
      for (std::size_t j = 0; j < nv; ++j)
        if (obj[j].sign() > 0 && (c == nv || nonbasic[j] < nonbasic[c])) c = j;
      if (c == nv) break;
      std::size_t r = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (coef[i][c].sign() >= 0) continue;
        const Rational ratio = rhs[i] / -coef[i][c];
        if (r == m || ratio < best || (ratio == best && basic[i] < basic[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m) break;  // -s is bounded above, so not reached
      pivot(r, c);
    }
    if (obj0.sign() < 0) return {false, std::nullopt};
  }
  std::vector<Rational> value(nv + m);
  for (std::size_t i = 0; i < m; ++i) value[basic[i]] = rhs[i];
  Point x(dim);
  for (std::size_t j = 0; j < dim; ++j) x[j] = value[j] - value[dim + j];
  return {true, x};
}

}  // namespace detail

Feasibility solve_halfspaces(const std::vector<Halfspace>& system, std::size_t dim, const std::optional<Point>& hint) {
  for (const auto& h : system)
    if (h.normal.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "halfspace of wrong dimension");
  if (hint && hint->size() == dim && holds(system, *hint)) return {true, hint};
  auto result = detail::fourier_motzkin(system, dim, kPairBudget);
  if (!result) result = detail::simplex_feasibility(system, dim);
  if (result->nonempty && !holds(system, *result->witness))
    throw Error(ErrorCode::kInfeasible, "feasibility witness fails a constraint");
  return *result;
}

}  // namespace centroidcut
