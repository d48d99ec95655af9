#pragma once

// Dense two-phase tableau simplex with Bland's anti-cycling rule.
//
//   minimize    cost . x
//   subject to  a_eq x  = b_eq
//               a_ub x <= b_ub
//               x >= 0

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "intrep/errors.hpp"

namespace intrep {

struct LinearProgram {
  std::vector<double> cost;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
};

struct LpResult {
  std::vector<double> x;
  double objective = 0.0;
  long iterations = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds the reduced costs; its rhs entry is minus the objective.
  double& cost(std::size_t c) { return at(rows_, c); }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

inline constexpr double kPivotEps = 1e-11;
inline constexpr double kCostEps = 1e-11;

// Runs Bland-rule iterations over columns [0, allowed) until optimal.
inline void run_simplex(Tableau& tab, std::vector<std::size_t>& basis, std::size_t allowed, long& iterations,
                        long max_iterations) {
  while (true) {
    std::size_t enter = tab.cols();
    for (std::size_t c = 0; c < allowed; ++c) {
      if (tab.cost(c) < -kCostEps) {
        enter = c;
        break;
      }
    }
    if (enter == tab.cols()) return;
    std::size_t leave = tab.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      const double a = tab.at(r, enter);
      if (a <= kPivotEps) continue;
      const double ratio = tab.rhs(r) / a;
      if (ratio < best - 1e-14) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + 1e-14 && basis[r] < basis[leave]) {
        leave = r;
      }
    }
    if (leave == tab.rows()) throw NumericalFailure("simplex: objective unbounded below");
    if (++iterations > max_iterations) throw NumericalFailure("simplex: iteration guard exceeded");
    tab.pivot(leave, enter);
    basis[leave] = enter;
  }
}

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp, long max_iterations = 200000) {
  const std::size_t n = lp.cost.size();
  const std::size_t m_eq = lp.a_eq.size(), m_ub = lp.a_ub.size();
  if (lp.b_eq.size() != m_eq || lp.b_ub.size() != m_ub) throw DomainError("solve_lp: row/rhs count mismatch");
  for (const auto& row : lp.a_eq)
    if (row.size() != n) throw DomainError("solve_lp: equality row has wrong width");
  for (const auto& row : lp.a_ub)
    if (row.size() != n) throw DomainError("solve_lp: inequality row has wrong width");

  const std::size_t m = m_eq + m_ub;
  // Columns: structural | slacks (one per <= row) | artificials (one per row).
  const std::size_t slack0 = n, art0 = n + m_ub, cols = n + m_ub + m;
  detail::Tableau tab(m, cols);
  std::vector<std::size_t> basis(m);
  std::vector<bool> needs_artificial(m, true);

  for (std::size_t i = 0; i < m; ++i) {
    const bool eq = i < m_eq;
    const auto& row = eq ? lp.a_eq[i] : lp.a_ub[i - m_eq];
    const double b = eq ? lp.b_eq[i] : lp.b_ub[i - m_eq];
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * row[j];
    if (!eq) tab.at(i, slack0 + (i - m_eq)) = sign;
    tab.rhs(i) = sign * b;
    tab.at(i, art0 + i) = 1.0;
    basis[i] = art0 + i;
    if (!eq && sign > 0.0) {
      basis[i] = slack0 + (i - m_eq);
      needs_artificial[i] = false;
    }
  }

  // Phase 1: minimize the sum of artificials still in the basis.
  for (std::size_t i = 0; i < m; ++i) {
    if (!needs_artificial[i]) continue;
    tab.cost(art0 + i) = 1.0;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!needs_artificial[i]) continue;
    for (std::size_t c = 0; c <= cols; ++c) tab.at(m, c) -= tab.at(i, c);
  }
  long iterations = 0;
  detail::run_simplex(tab, basis, cols, iterations, max_iterations);

  double rhs_scale = 1.0;
  for (double b : lp.b_eq) rhs_scale = std::max(rhs_scale, std::fabs(b));
  for (double b : lp.b_ub) rhs_scale = std::max(rhs_scale, std::fabs(b));
  if (-tab.rhs(m) > 1e-9 * rhs_scale) throw Infeasible("solve_lp: no feasible point");

  // Drive zero-level artificials out of the basis where a structural/slack pivot exists.
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < art0) continue;
    for (std::size_t c = 0; c < art0; ++c) {
      if (std::fabs(tab.at(r, c)) > 1e-9) {
        tab.pivot(r, c);
        basis[r] = c;
        break;
      }
    }
  }

  // Phase 2: original costs, artificial columns barred from entering.
  for (std::size_t c = 0; c <= cols; ++c) tab.at(m, c) = 0.0;
  for (std::size_t j = 0; j < n; ++j) tab.cost(j) = lp.cost[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = basis[r];
    const double cb = b < n ? lp.cost[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) tab.at(m, c) -= cb * tab.at(r, c);
  }
  detail::run_simplex(tab, basis, art0, iterations, max_iterations);

  LpResult out;
  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) out.x[basis[r]] = std::max(0.0, tab.rhs(r));
  for (std::size_t j = 0; j < n; ++j) out.objective += lp.cost[j] * out.x[j];
  out.iterations = iterations;
  return out;
}

}  // namespace intrep
