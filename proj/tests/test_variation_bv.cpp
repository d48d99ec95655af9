#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "intrep/errors.hpp"
#include "intrep/simplex.hpp"
#include "intrep/variation_bv.hpp"

using namespace intrep;

namespace {

constexpr double kPi = std::numbers::pi;
using Vec = std::vector<double>;

Vec linspace(double a, double b, int n) {
  Vec x(n);
  for (int j = 0; j < n; ++j) x[j] = a + (b - a) * j / (n - 1);
  x.back() = b;
  return x;
}

template <class F>
Vec sample(const Vec& x, F f) {
  Vec v(x.size());
  std::transform(x.begin(), x.end(), v.begin(), f);
  return v;
}

// m x k matrix with orthonormal columns (modified Gram-Schmidt on Gaussian draws).
std::vector<Vec> orthonormal_columns(std::size_t m, std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<Vec> cols;
  while (cols.size() < k) {
    Vec v(m);
    for (double& e : v) e = nd(rng);
    for (const auto& c : cols) {
      double dot = 0.0;
      for (std::size_t j = 0; j < m; ++j) dot += c[j] * v[j];
      for (std::size_t j = 0; j < m; ++j) v[j] -= dot * c[j];
    }
    double n2 = 0.0;
    for (double e : v) n2 += e * e;
    for (double& e : v) e /= std::sqrt(n2);
    cols.push_back(v);
  }
  return cols;
}

double sup_abs(const Vec& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::fabs(e));
  return m;
}

}  // namespace

// --- simplex ---------------------------------------------------------------

TEST(Simplex, SmallProblem) {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6  ->  (8/5, 6/5), value 14/5
  LinearProgram lp;
  lp.cost = {-1.0, -1.0};
  lp.a_ub = {{1.0, 2.0}, {3.0, 1.0}};
  lp.b_ub = {4.0, 6.0};
  const auto r = solve_lp(lp);
  EXPECT_NEAR(r.objective, -2.8, 1e-12);
  EXPECT_NEAR(r.x[0], 1.6, 1e-12);
  EXPECT_NEAR(r.x[1], 1.2, 1e-12);
}

TEST(Simplex, EqualityAndNegativeRhs) {
  // min x + 2y s.t. x + y = 3, -x <= -1  ->  x = 3, y = 0
  LinearProgram lp;
  lp.cost = {1.0, 2.0};
  lp.a_eq = {{1.0, 1.0}};
  lp.b_eq = {3.0};
  lp.a_ub = {{-1.0, 0.0}};
  lp.b_ub = {-1.0};
  const auto r = solve_lp(lp);
  EXPECT_NEAR(r.objective, 3.0, 1e-12);
}

TEST(Simplex, BealeCyclingExampleTerminates) {
  LinearProgram lp;
  lp.cost = {-0.75, 20.0, -0.5, 6.0};
  lp.a_ub = {{0.25, -8.0, -1.0, 9.0}, {0.5, -12.0, -0.5, 3.0}, {0.0, 0.0, 1.0, 0.0}};
  lp.b_ub = {0.0, 0.0, 1.0};
  const auto r = solve_lp(lp);
  EXPECT_NEAR(r.objective, -1.25, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LinearProgram bad;
  bad.cost = {1.0};
  bad.a_eq = {{1.0}};
  bad.b_eq = {-1.0};
  EXPECT_THROW(solve_lp(bad), Infeasible);

  LinearProgram open;
  open.cost = {-1.0, 0.0};
  open.a_ub = {{-1.0, 1.0}};
  open.b_ub = {1.0};
  EXPECT_THROW(solve_lp(open), NumericalFailure);
}

TEST(Simplex, IterationGuard) {
  LinearProgram lp;
  lp.cost = {-1.0, -1.0};
  lp.a_ub = {{1.0, 2.0}, {3.0, 1.0}};
  lp.b_ub = {4.0, 6.0};
  EXPECT_THROW(solve_lp(lp, 1), NumericalFailure);
}

// --- variation norm over finite dictionaries --------------------------------

TEST(VariationNorm, CanonicalBasisExample) {
  FiniteDictionary dict;
  dict.grid = linspace(0, 1, 6);
  for (int i = 0; i < 6; ++i) {
    Vec e(6, 0.0);
    e[i] = 1.0;
    dict.units.push_back(e);
  }
  const Vec f = {3.0, 0.0, 0.0, 0.0, -2.0, 0.0};
  const auto s = variation_norm_finite(f, dict);
  EXPECT_NEAR(s.objective, 5.0, 1e-12);
  EXPECT_EQ(s.status, L1MinSolution::Status::exact);
}

TEST(VariationNorm, OrthonormalColumnsGiveL1OfCoefficients) {
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> nd;
  const std::size_t m = 12, k = 7;
  FiniteDictionary dict;
  dict.grid = linspace(0, 1, int(m));
  const auto cols = orthonormal_columns(m, k, rng);
  dict.units = cols;
  for (int trial = 0; trial < 20; ++trial) {
    Vec a(k), f(m, 0.0);
    double l1 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = nd(rng);
      l1 += std::fabs(a[i]);
      for (std::size_t j = 0; j < m; ++j) f[j] += a[i] * cols[i][j];
    }
    const auto s = variation_norm_finite(f, dict);
    EXPECT_NEAR(s.objective, l1, 1e-9) << trial;
  }
}

TEST(VariationNorm, UnitAndZero) {
  const Vec grid = linspace(0, 1, 9);
  const auto dict = interval_char_dictionary(grid);
  for (std::size_t u = 0; u < dict.units.size(); u += 3) {
    EXPECT_NEAR(variation_norm_finite(dict.units[u], dict).objective, 1.0, 1e-12) << u;
  }
  const auto z = variation_norm_finite(Vec(grid.size(), 0.0), dict);
  EXPECT_NEAR(z.objective, 0.0, 1e-15);
}

TEST(VariationNorm, HomogeneousAndSubadditive) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  const Vec grid = linspace(0, 1, 9);
  const auto dict = interval_char_dictionary(grid);
  for (int trial = 0; trial < 10; ++trial) {
    Vec f(grid.size()), g(grid.size()), fg(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      f[j] = ud(rng);
      g[j] = ud(rng);
      fg[j] = f[j] + g[j];
    }
    const double nf = variation_norm_finite(f, dict).objective;
    const double ng = variation_norm_finite(g, dict).objective;
    EXPECT_LE(variation_norm_finite(fg, dict).objective, nf + ng + 1e-9);
    for (double c : {-3.0, 0.25}) {
      Vec cf = f;
      for (double& e : cf) e *= c;
      EXPECT_NEAR(variation_norm_finite(cf, dict).objective, std::fabs(c) * nf, 1e-9);
    }
  }
}

TEST(VariationNorm, ToleranceBandRelaxesObjective) {
  const Vec grid = linspace(0, 1, 9);
  const auto dict = interval_char_dictionary(grid);
  const Vec f = sample(grid, [](double x) { return x; });
  const auto exact = variation_norm_finite(f, dict);
  const auto loose = variation_norm_finite(f, dict, 0.1);
  EXPECT_LE(loose.objective, exact.objective + 1e-12);
  EXPECT_LE(sup_abs(Vec{loose.residual}), 0.1 + 1e-12);
}

TEST(VariationNorm, OutsideSpanIsInfeasible) {
  FiniteDictionary dict;
  dict.grid = {0.0, 1.0};
  dict.units = {{1.0, 1.0}};
  EXPECT_THROW(variation_norm_finite(Vec{1.0, 0.0}, dict), Infeasible);
  EXPECT_THROW(variation_norm_finite(Vec{1.0}, dict), DomainError);
  dict.units = {{0.0, 0.0}};
  EXPECT_THROW(variation_norm_finite(Vec{1.0, 0.0}, dict), DomainError);
}

// --- bounded variation --------------------------------------------------------

TEST(TotalVariation, Basics) {
  const Vec x = linspace(0, 1, 50);
  EXPECT_NEAR(total_variation(x, sample(x, [](double t) { return t * t * t; })), 1.0, 1e-14);
  EXPECT_EQ(total_variation(Vec{0.0, 1.0}, Vec{2.0, 2.0}), 0.0);
  EXPECT_THROW(total_variation(Vec{1.0, 0.0}, Vec{0.0, 0.0}), DomainError);
  EXPECT_THROW(total_variation(Vec{1.0}, Vec{0.0}), DomainError);
}

TEST(TotalVariation, SineMatchesRandomRefinements) {
  const Vec x = linspace(0, 2 * kPi, 10000);
  const double v = total_variation(x, sample(x, [](double t) { return std::sin(t); }));
  EXPECT_NEAR(v, 4.0, 1e-4);
  // sup over random partitions approaches 4 from below
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(0.0, 2 * kPi);
  double best = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Vec p(400);
    for (double& e : p) e = ud(rng);
    p.push_back(0.0);
    p.push_back(2 * kPi);
    std::sort(p.begin(), p.end());
    const double s = total_variation(p, sample(p, [](double t) { return std::sin(t); }));
    EXPECT_LE(s, 4.0 + 1e-12);
    best = std::max(best, s);
  }
  EXPECT_NEAR(best, v, 1e-3);
}

TEST(BVFunction, CanonicalPiecewiseConstant) {
  BVFunction f{{0.0, 0.5, 0.5, 1.0}, {1.0, 1.0, 3.0, 7.0}, BVFunction::Kind::piecewise_constant};
  const auto c = f.canonical();
  ASSERT_EQ(c.x.size(), 3u);
  EXPECT_EQ(c.value[1], 3.0);  // right-continuous at the jump
  EXPECT_EQ(c.value[2], 3.0);  // left-continuous at b
  EXPECT_NEAR(f.variation(), 2.0, 1e-15);
  EXPECT_GE(f.variation(), std::fabs(c.value.back() - c.value.front()));
  EXPECT_TRUE(f.variation_certified());
  EXPECT_FALSE(disjoint_bumps(2).variation_certified());
  EXPECT_THROW(disjoint_bumps(2).canonical(), DomainError);
}

TEST(Jordan, ReconstructionAndMonotonicity) {
  const Vec x = linspace(0, 2 * kPi, 400);
  BVFunction f{x, sample(x, [](double t) { return std::sin(t) - 0.3; })};
  const auto j = jordan_decomposition(f);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(j.f1[i] - j.f2[i], f.value[i], 1e-14);
    EXPECT_GE(j.f1[i], 0.0);
    EXPECT_GE(j.f2[i], 0.0);
    if (i > 0) {
      EXPECT_GE(j.f1[i] - j.f1[i - 1], -1e-12);
      EXPECT_GE(j.f2[i] - j.f2[i - 1], -1e-12);
    }
  }
  EXPECT_NEAR(j.K, 0.3, 1e-15);
}

TEST(Jordan, SineAccumulatesFour) {
  const Vec x = linspace(0, 2 * kPi, 10001);
  const auto j = jordan_decomposition({x, sample(x, [](double t) { return std::sin(t); })});
  EXPECT_NEAR(j.f1.back() - j.f1.front(), 4.0, 1e-6);
}

TEST(Jordan, ConstantFunction) {
  const auto j = jordan_decomposition({{0.0, 0.5, 1.0}, {2.0, 2.0, 2.0}});
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(j.f1[i], 2.0);  // V + K with V = 0, K = 2
    EXPECT_EQ(j.f2[i], 0.0);
  }
}

TEST(BVBound, UnitMembership) {
  const Vec grid = linspace(0, 1, 9);
  const auto dict = interval_char_dictionary(grid);
  const Vec chi = sample(grid, [](double t) { return t <= 0.375 ? 1.0 : 0.0; });
  BVFunction f{grid, chi, BVFunction::Kind::continuous};
  EXPECT_NEAR(bv_variation_bound(f), 3.0, 1e-15);
  EXPECT_NEAR(variation_norm_finite(chi, dict).objective, 1.0, 1e-12);
}

TEST(BVBound, SuiteSatisfiesBothSides) {
  const Vec grid = linspace(0, 1, 65);
  const auto dict = interval_char_dictionary(grid);
  std::vector<std::pair<const char*, Vec>> suite = {
      {"x", sample(grid, [](double t) { return t; })},
      {"sin", sample(grid, [](double t) { return std::sin(2 * kPi * t); })},
      {"staircase", sample(grid, [](double t) { return std::floor(4 * t) / 4 - 0.5; })},
      {"x^2 staircase", sample(grid, [](double t) { return std::floor(8 * t * t) / 8; })},
  };
  for (const auto& [name, v] : suite) {
    const BVFunction f{grid, v, BVFunction::Kind::continuous};
    const double obj = variation_norm_finite(v, dict).objective;
    EXPECT_LE(sup_abs(v), obj + 1e-9) << name;
    EXPECT_LE(obj, bv_variation_bound(f) + 1e-6) << name;
  }
  EXPECT_NEAR(bv_variation_bound({grid, suite[0].second}), 2.0, 1e-12);
}

TEST(BVBound, SineOnFullPeriod) {
  const Vec grid = linspace(0, 2 * kPi, 129);
  const Vec v = sample(grid, [](double t) { return std::sin(t); });
  const double bound = bv_variation_bound({grid, v});
  EXPECT_NEAR(bound, 8.0, 1e-9);
  EXPECT_LE(variation_norm_finite(v, interval_char_dictionary(grid)).objective, bound + 1e-6);
}

TEST(Staircase, IdentityBreakpointsOnGrid) {
  const Vec x = linspace(0, 1, 10001);
  const auto st = staircase_approx(x, x, 4);
  const Vec expected = {0.0, 0.25, 0.5, 0.75, 1.0};
  ASSERT_EQ(st.breakpoints.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(st.breakpoints[i], expected[i]);
}

TEST(Staircase, GapAtMostOneOverN) {
  const Vec x = linspace(0, 1, 10001);
  for (auto g : {sample(x, [](double t) { return t; }), sample(x, [](double t) { return t * t; })}) {
    for (int n : {4, 16, 64}) {
      const auto st = staircase_approx(x, g, n);
      EXPECT_LE(staircase_gap(st, x, g), 1.0 / n + 1e-12) << n;
      EXPECT_LE(st.certificate(), g.back() + 1e-12);
      EXPECT_EQ(st.breakpoints.front(), 0.0);
      EXPECT_EQ(st.breakpoints.back(), 1.0);
      EXPECT_GE(st.breakpoints.size(), 2u);
      for (std::size_t i = 1; i < st.levels.size(); ++i) EXPECT_GE(st.levels[i], st.levels[i - 1]);
    }
  }
}

TEST(Staircase, ConstantInput) {
  const Vec x = linspace(0, 1, 11);
  const Vec g(11, 0.7);
  const auto st = staircase_approx(x, g, 5);
  EXPECT_EQ(st.levels.size(), 1u);
  EXPECT_EQ(staircase_gap(st, x, g), 0.0);
}

TEST(Staircase, RejectsDecreasingInput) {
  const Vec x = linspace(0, 1, 5);
  EXPECT_THROW(staircase_approx(x, Vec{0.0, 0.5, 0.4, 0.6, 1.0}, 2), DomainError);
  EXPECT_NO_THROW(staircase_approx(x, Vec{0.0, 0.5, 0.5 - 1e-13, 0.6, 1.0}, 2));
  EXPECT_THROW(staircase_approx(x, x, 0), DomainError);
}

TEST(NonEquivalence, SupShrinksWhileVariationGrows) {
  for (int n : {2, 4, 8}) {
    const auto f = disjoint_bumps(n);
    EXPECT_NEAR(sup_abs(f.value), 1.0 / n, 1e-15);
    const double obj = variation_norm_finite(f.value, interval_char_dictionary(f.x)).objective;
    EXPECT_GE(obj, 0.5 * n) << n;
  }
}
