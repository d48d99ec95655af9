#pragma once

// Variation norms over finite dictionaries (l1 minimization) and the
// bounded-variation toolkit on [a, b]: total variation, canonical
// representative, Jordan parts and staircase approximation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "intrep/dictionaries.hpp"
#include "intrep/errors.hpp"
#include "intrep/simplex.hpp"

namespace intrep {

// A finite G sampled on a shared grid. B_{G,X} is the convex hull of +-units.
struct FiniteDictionary {
  std::vector<double> grid;
  std::vector<std::vector<double>> units;
  double q = INFINITY;

  void validate() const {
    if (grid.empty()) throw DomainError("FiniteDictionary: empty grid");
    if (units.empty()) throw DomainError("FiniteDictionary: no units");
    for (const auto& u : units) {
      if (u.size() != grid.size()) throw DomainError("FiniteDictionary: unit not on the shared grid");
      if (std::all_of(u.begin(), u.end(), [](double v) { return v == 0.0; }))
        throw DomainError("FiniteDictionary: unit is identically zero");
    }
    if (!(q >= 1.0)) throw DomainError("FiniteDictionary: q must be >= 1");
  }
};

struct L1MinSolution {
  enum class Status { exact, within_tol, infeasible };

  std::vector<double> coefficients;
  double objective = 0.0;  // sum |c_i|
  double residual = 0.0;   // discrete L^q norm of sum c_i g_i - f
  Status status = Status::infeasible;
};

namespace detail {
// Discrete L^q norm on a grid: trapezoid weights for finite q, max for q = inf.
inline double grid_lq(std::span<const double> grid, std::span<const double> v, double q) {
  if (std::isinf(q) || grid.size() < 2) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
  }
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j)
    s += 0.5 * (grid[j + 1] - grid[j]) * (std::pow(std::fabs(v[j]), q) + std::pow(std::fabs(v[j + 1]), q));
  return std::pow(s, 1.0 / q);
}
}  // namespace detail

// min sum |c_i| subject to |sum c_i g_i(x_j) - f(x_j)| <= tol at every grid
// point, with c_i = s_i - t_i and s, t >= 0. tol = 0 imposes equality.
inline L1MinSolution variation_norm_finite(std::span<const double> f, const FiniteDictionary& dict, double tol = 0.0,
                                           long max_iterations = 200000) {
  dict.validate();
  if (f.size() != dict.grid.size()) throw DomainError("variation_norm_finite: f is not on the dictionary grid");
  if (!(tol >= 0.0)) throw DomainError("variation_norm_finite: tol must be >= 0");
  const std::size_t k = dict.units.size(), m = dict.grid.size();

  LinearProgram lp;
  lp.cost.assign(2 * k, 1.0);
  auto row_at = [&](std::size_t j, double sign) {
    std::vector<double> row(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = sign * dict.units[i][j];
      row[k + i] = -sign * dict.units[i][j];
    }
    return row;
  };
  for (std::size_t j = 0; j < m; ++j) {
    if (tol == 0.0) {
      lp.a_eq.push_back(row_at(j, 1.0));
      lp.b_eq.push_back(f[j]);
    } else {
      lp.a_ub.push_back(row_at(j, 1.0));
      lp.b_ub.push_back(f[j] + tol);
      lp.a_ub.push_back(row_at(j, -1.0));
      lp.b_ub.push_back(tol - f[j]);
    }
  }

  const LpResult res = solve_lp(lp, max_iterations);
  L1MinSolution out;
  out.coefficients.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.coefficients[i] = res.x[i] - res.x[k + i];
    out.objective += std::fabs(out.coefficients[i]);
  }
  std::vector<double> r(m);
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double s = -f[j];
    for (std::size_t i = 0; i < k; ++i) s += out.coefficients[i] * dict.units[i][j];
    r[j] = s;
    worst = std::max(worst, std::fabs(s));
  }
  out.residual = detail::grid_lq(dict.grid, r, dict.q);
  out.status = worst <= 1e-9 ? L1MinSolution::Status::exact : L1MinSolution::Status::within_tol;
  return out;
}

// {chi_[a,b]} + {chi_[a,c], chi_[c,b] : c an interior grid point}, sampled on the grid.
inline FiniteDictionary interval_char_dictionary(const std::vector<double>& grid) {
  if (grid.size() < 2) throw DomainError("interval_char_dictionary: need at least two grid points");
  const UnitFamily fam = interval_char_family(grid.front(), grid.back());
  FiniteDictionary dict;
  dict.grid = grid;
  auto sample = [&](double c, IntervalSide side) {
    std::vector<double> u(grid.size());
    const double y[2] = {c, double(int(side))};
    for (std::size_t j = 0; j < grid.size(); ++j) u[j] = fam.eval(std::span<const double>(&grid[j], 1), y);
    return u;
  };
  dict.units.push_back(sample(grid.front(), IntervalSide::full));
  for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
    dict.units.push_back(sample(grid[j], IntervalSide::left));
    dict.units.push_back(sample(grid[j], IntervalSide::right));
  }
  return dict;
}

// ---------------------------------------------------------------------------

// Sum of |f(x_{i+1}) - f(x_i)|. Exact for piecewise-monotone data whose
// monotonicity breaks lie on the grid, a lower bound for V otherwise.
inline double total_variation(std::span<const double> x, std::span<const double> v) {
  if (x.size() != v.size()) throw DomainError("total_variation: size mismatch");
  if (x.size() < 2) throw DomainError("total_variation: need at least two samples");
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    if (x[j + 1] < x[j]) throw DomainError("total_variation: grid is not sorted");
    s += std::fabs(v[j + 1] - v[j]);
  }
  return s;
}

struct BVFunction {
  // piecewise_constant: the sample at x_j holds on [x_j, x_{j+1}); a repeated
  //   x encodes a jump (left value first, then the value from there on).
  // continuous: samples of a continuous, piecewise-monotone function.
  // general: anything else; no canonical representative, V is a lower bound.
  enum class Kind { piecewise_constant, continuous, general };

  std::vector<double> x;
  std::vector<double> value;
  Kind kind = Kind::continuous;

  void validate() const {
    if (x.size() != value.size() || x.size() < 2) throw DomainError("BVFunction: need >= 2 (x, value) samples");
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
      if (x[j + 1] < x[j]) throw DomainError("BVFunction: grid is not sorted");
      if (x[j + 1] == x[j] && kind != Kind::piecewise_constant)
        throw DomainError("BVFunction: repeated abscissa only allowed for piecewise-constant data");
    }
    if (!(x.front() < x.back())) throw DomainError("BVFunction: need a < b");
  }

  double a() const { return x.front(); }
  double b() const { return x.back(); }

  // f*: right-continuous on [a, b), left-continuous at b.
  BVFunction canonical() const {
    validate();
    if (kind == Kind::continuous) return *this;
    if (kind == Kind::general)
      throw DomainError("BVFunction: canonical representative needs piecewise-constant or continuous samples");
    BVFunction out;
    out.kind = kind;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!out.x.empty() && out.x.back() == x[j]) {
        out.value.back() = value[j];
      } else {
        out.x.push_back(x[j]);
        out.value.push_back(value[j]);
      }
    }
    out.value.back() = out.value[out.value.size() - 2];
    return out;
  }

  double variation() const {
    const BVFunction c = canonical();
    return total_variation(c.x, c.value);
  }
  bool variation_certified() const { return kind != Kind::general; }
};

struct JordanParts {
  std::vector<double> x;
  std::vector<double> f1;  // V(f*, [a, x]) + K
  std::vector<double> f2;  // V(f*, [a, x]) + K - f*(x)
  double K = 0.0;          // |f*(a)|
};

inline JordanParts jordan_decomposition(const BVFunction& f) {
  const BVFunction c = f.canonical();
  JordanParts out;
  out.x = c.x;
  out.K = std::fabs(c.value.front());
  out.f1.resize(c.x.size());
  out.f2.resize(c.x.size());
  double v = 0.0;
  for (std::size_t j = 0; j < c.x.size(); ++j) {
    if (j > 0) v += std::fabs(c.value[j] - c.value[j - 1]);
    out.f1[j] = v + out.K;
    out.f2[j] = out.f1[j] - c.value[j];
  }
  return out;
}

// 2 V(f*, [a, b]) + |f*(a)|
inline double bv_variation_bound(const BVFunction& f) {
  const BVFunction c = f.canonical();
  return 2.0 * total_variation(c.x, c.value) + std::fabs(c.value.front());
}

struct Staircase {
  std::vector<double> breakpoints;  // a = a_1 < ... < a_m = b
  std::vector<double> levels;       // g(a_1), ..., g(a_{m-1})

  // Level of the piece [a_i, a_{i+1}) containing x; the last piece is closed.
  double eval(double x) const {
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end() - 1, x);
    const std::size_t i = it == breakpoints.begin() ? 0 : std::size_t(it - breakpoints.begin()) - 1;
    return levels[std::min(i, levels.size() - 1)];
  }

  // |g(a_1)| + sum |g(a_{i+1}) - g(a_i)|: coefficient mass of the telescoped
  // form g(a_1) chi_[a_1,b] + sum (g(a_{i+1}) - g(a_i)) chi_[a_{i+1},b].
  double certificate() const {
    double s = std::fabs(levels.front());
    for (std::size_t i = 1; i < levels.size(); ++i) s += std::fabs(levels[i] - levels[i - 1]);
    return s;
  }
};

// a_i = min{x : g(a) + (i-1)/n <= g(x)} on the sample grid, for nondecreasing g.
inline Staircase staircase_approx(std::span<const double> x, std::span<const double> g, int n) {
  if (x.size() != g.size() || x.size() < 2) throw DomainError("staircase_approx: need >= 2 samples");
  if (n < 1) throw DomainError("staircase_approx: n must be >= 1");
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    if (!(x[j + 1] > x[j])) throw DomainError("staircase_approx: grid must be strictly increasing");
    if (g[j + 1] < g[j] - 1e-12) throw DomainError("staircase_approx: g is decreasing");
  }
  Staircase st;
  st.breakpoints.push_back(x.front());
  st.levels.push_back(g.front());
  std::size_t j = 0;
  for (long i = 2;; ++i) {
    const double threshold = g.front() + double(i - 1) / double(n);
    if (threshold > g.back()) break;
    while (g[j] < threshold) ++j;
    if (j + 1 == x.size()) break;  // reached b
    if (x[j] == st.breakpoints.back()) continue;
    st.breakpoints.push_back(x[j]);
    st.levels.push_back(g[j]);
  }
  st.breakpoints.push_back(x.back());
  return st;
}

// max_j |g(x_j) - staircase(x_j)|
inline double staircase_gap(const Staircase& st, std::span<const double> x, std::span<const double> g) {
  double gap = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) gap = std::max(gap, std::fabs(g[j] - st.eval(x[j])));
  return gap;
}

// (1/n) times the indicator of n^2 disjoint closed intervals in [0, 1], on a
// grid of 3n^2 + 1 points (each interval covers two grid points).
inline BVFunction disjoint_bumps(int n) {
  if (n < 1) throw DomainError("disjoint_bumps: n must be >= 1");
  const std::size_t cells = 3 * std::size_t(n) * std::size_t(n);
  BVFunction f;
  f.kind = BVFunction::Kind::general;
  for (std::size_t j = 0; j <= cells; ++j) {
    f.x.push_back(double(j) / double(cells));
    f.value.push_back(j % 3 == 0 ? 0.0 : 1.0 / n);
  }
  return f;
}

}  // namespace intrep
