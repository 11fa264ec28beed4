#pragma once

#include <flowgame/rational.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace flowgame {

/// maximize c.x  subject to  A x <= b, x >= 0, with b >= 0 so the origin is a
/// feasible basis. Dense row-major A (rows = constraints).
struct PackingLp {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct LpSolution {
  bool bounded = true;
  Rational value;
  std::vector<Rational> x;
};

/// Exact primal simplex on a dense tableau with Bland's rule (lowest-index
/// entering column, lowest-index leaving variable on ratio ties), so the
/// pivot sequence is deterministic and cannot cycle.
inline LpSolution solve_packing_lp(const PackingLp& lp) {
  const std::size_t m = lp.b.size();
  const std::size_t n = lp.c.size();
  if (lp.a.size() != m) throw std::invalid_argument("LP: row count mismatch");
  for (const auto& row : lp.a)
    if (row.size() != n) throw std::invalid_argument("LP: column count mismatch");
  for (const auto& bi : lp.b)
    if (bi.sign() < 0) throw std::invalid_argument("LP: negative right-hand side");

  // columns 0..n-1 structural, n..n+m-1 slack
  const std::size_t cols = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols));
  std::vector<Rational> rhs = lp.b;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = lp.a[i][j];
    t[i][n + i] = Rational(1);
  }
  // reduced costs for maximization: entering candidates have reduced > 0
  std::vector<Rational> reduced(cols);
  for (std::size_t j = 0; j < n; ++j) reduced[j] = lp.c[j];
  Rational objective;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  while (true) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < cols; ++j)
      if (reduced[j].sign() > 0) {
        enter = j;
        break;
      }
    if (!enter) break;
    const std::size_t q = *enter;

    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][q].sign() <= 0) continue;
      Rational ratio = rhs[i] / t[i][q];
      if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[*leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (!leave) return {false, {}, {}};
    const std::size_t r = *leave;

    const Rational pivot = t[r][q];
    for (auto& v : t[r]) v /= pivot;
    rhs[r] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][q].is_zero()) continue;
      const Rational f = t[i][q];
      for (std::size_t j = 0; j < cols; ++j)
        if (!t[r][j].is_zero()) t[i][j] -= f * t[r][j];
      rhs[i] -= f * rhs[r];
    }
    if (!reduced[q].is_zero()) {
      const Rational f = reduced[q];
      for (std::size_t j = 0; j < cols; ++j)
        if (!t[r][j].is_zero()) reduced[j] -= f * t[r][j];
      objective += f * rhs[r];
    }
    basis[r] = q;
  }

  LpSolution sol;
  sol.value = objective;
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = rhs[i];
  return sol;
}

}  // namespace flowgame
