#pragma once

// Integral representations f(x) = int_Y w(y) phi(x, y) dmu(y): pointwise
// evaluation, bound certificates, quadrature networks and the cost of a
// multi-family approximation.

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intrep/dictionaries.hpp"
#include "intrep/errors.hpp"
#include "intrep/quadrature.hpp"

namespace intrep {

struct WeightFn {
  PointFn eval;
  ParamSpec space;                  // integration space Y with measure mu
  std::optional<double> l1_closed;  // ||w||_{L^1(Y, mu)} when known analytically
};

struct IntegralRep {
  std::string name;
  WeightFn weight;
  UnitFamily family;
  DomainSpec target;  // Omega with Lebesgue measure
  double q = 2.0;     // X = L^q(Omega)
};

// Pointwise value of the representation. NonConvergence here means the
// parameter integral failed at x, i.e. the integrability hypothesis fails.
inline double rep_eval(const IntegralRep& rep, std::span<const double> x, const QuadOptions& opt = {}) {
  auto integrand = [&](std::span<const double> y) {
    const double w = rep.weight.eval(y);
    return w == 0.0 ? 0.0 : w * rep.family.eval(x, y);
  };
  SegmentBreaks cuts;
  if (rep.family.breaks) cuts = [&](const LineSegment& seg) { return rep.family.breaks(x, seg); };
  return integrate_params(rep.weight.space, integrand, opt, cuts).value;
}

inline double rep_eval(const IntegralRep& rep, double x, const QuadOptions& opt = {}) {
  return rep_eval(rep, std::span<const double>(&x, 1), opt);
}

inline double weight_l1(const WeightFn& w, const QuadOptions& opt = {}) {
  return integrate_params(w.space, [&](std::span<const double> y) { return std::fabs(w.eval(y)); }, opt).value;
}

inline double weight_l1(const IntegralRep& rep, const QuadOptions& opt = {}) { return weight_l1(rep.weight, opt); }

struct EssSup {
  double value = 0.0;
  bool closed_form = false;  // false: maximum over a parameter grid, a lower estimate
};

// M with ||Phi(y)||_X <= M for mu-a.e. y in the support of w. Uses the
// family's analytic s_{G,X} when finite, else the maximum of ||Phi(y)||_{L^q}
// over `grid` interior points per parameter line (uniform in the quadrature
// coordinate), skipping points where w vanishes.
inline EssSup ess_sup_unit_norm(const WeightFn& w, const UnitFamily& fam, double q, int grid = 257) {
  if (fam.closed_form_norm && std::isfinite(fam.sup_unit_norm) && q == fam.ambient_q)
    return {fam.sup_unit_norm, true};
  double best = 0.0;
  auto consider = [&](std::span<const double> y) {
    if (w.eval(y) != 0.0) best = std::max(best, fam.unit_lq_norm(y, q));
  };
  if (w.space.kind == ParamSpec::Kind::finite_set) {
    for (const auto& p : w.space.points) consider(p);
    return {best, fam.closed_form_norm};
  }
  for (const auto& seg : w.space.segments()) {
    const double a = seg.line.u_lo(), b = seg.line.u_hi();
    for (int k = 1; k <= grid; ++k) {
      const double u = a + (b - a) * (double(k) / double(grid + 1));
      const auto y = seg.at(seg.line.map(u).first);
      consider(y);
    }
  }
  return {best, false};
}

inline EssSup ess_sup_unit_norm(const IntegralRep& rep, int grid = 257) {
  return ess_sup_unit_norm(rep.weight, rep.family, rep.q, grid);
}

struct BoundReport {
  double w_l1 = 0.0;
  double M = 0.0;
  bool M_closed_form = false;
  double s_G = 0.0;  // sup of unit norms over the whole family
  double f_norm_est = 0.0;
  double var_bound = 0.0;      // ||f||_{G,X} <= ||w||_1
  double product_bound = 0.0;  // ||w||_1 * M
  double slack_th2 = 0.0;      // product_bound - ||f||_X
  double slack_thm = 0.0;      // var_bound * s_G - ||f||_X
  bool violation = false;
};

inline constexpr double kBoundSlackTolerance = 1e-9;

inline BoundReport bound_report(const IntegralRep& rep, double f_norm_est, const QuadOptions& opt = {}) {
  BoundReport r;
  r.w_l1 = weight_l1(rep, opt);
  const auto m = ess_sup_unit_norm(rep);
  r.M = m.value;
  r.M_closed_form = m.closed_form;
  r.s_G = rep.family.sup_unit_norm;
  r.f_norm_est = f_norm_est;
  r.var_bound = r.w_l1;
  r.product_bound = r.w_l1 * r.M;
  r.slack_th2 = r.product_bound - f_norm_est;
  r.slack_thm = r.var_bound * r.s_G - f_norm_est;
  r.violation = r.slack_th2 < -kBoundSlackTolerance || r.slack_thm < -kBoundSlackTolerance;
  return r;
}

// ||f||_X for the represented function, sampling f through rep_eval.
inline double rep_norm(const IntegralRep& rep, const QuadOptions& outer = {1e-9},
                       const QuadOptions& inner = {1e-12}) {
  return lq_norm([&](std::span<const double> x) { return rep_eval(rep, x, inner); }, rep.target, rep.q, outer);
}

// Cumulative |w| dmu and w dmu along each parameter line, tabulated on
// uniform panels of the quadrature coordinate u and inverted by safeguarded
// Newton iteration. Backs equal-mass partitions and the change of measure to
// mu_w = |w| mu.
class MassMap {
 public:
  explicit MassMap(const WeightFn& w, int panels = 512, QuadOptions opt = {1e-13, 1e-300, 400})
      : weight_(w), opt_(opt) {
    if (panels < 1) throw DomainError("MassMap: panels must be >= 1");
    for (const auto& seg : w.space.segments()) {
      Table tab;
      tab.seg = seg;
      const double a = seg.line.u_lo(), b = seg.line.u_hi();
      tab.u.resize(panels + 1);
      for (int j = 0; j <= panels; ++j) tab.u[j] = a + (b - a) * (double(j) / panels);
      tab.u.back() = b;
      tab.cum_abs.assign(panels + 1, 0.0);
      tab.cum_signed.assign(panels + 1, 0.0);
      for (int j = 0; j < panels; ++j) {
        tab.cum_abs[j + 1] = tab.cum_abs[j] + partial(tab, tab.u[j], tab.u[j + 1], true);
        tab.cum_signed[j + 1] = tab.cum_signed[j] + partial(tab, tab.u[j], tab.u[j + 1], false);
      }
      offsets_.push_back(total_);
      total_ += tab.cum_abs.back();
      tables_.push_back(std::move(tab));
    }
  }

  double total() const { return total_; }
  std::size_t segments() const { return tables_.size(); }
  double segment_mass(std::size_t s) const { return tables_[s].cum_abs.back(); }
  double segment_offset(std::size_t s) const { return offsets_[s]; }
  double u_lo(std::size_t s) const { return tables_[s].u.front(); }
  double u_hi(std::size_t s) const { return tables_[s].u.back(); }
  const LineSegment& segment(std::size_t s) const { return tables_[s].seg; }

  // w dmu over [u_lo, u] of segment s.
  double signed_mass_to(std::size_t s, double u) const { return cumulative(s, u, false); }
  double abs_mass_to(std::size_t s, double u) const { return cumulative(s, u, true); }

  std::vector<double> param_at(std::size_t s, double u) const {
    return tables_[s].seg.at(tables_[s].seg.line.map(u).first);
  }
  double weight_at(std::size_t s, double u) const {
    const auto y = param_at(s, u);
    return weight_.eval(y);
  }

  // Point of segment s at which the |w|-mass measured from the segment start equals m.
  double inverse(std::size_t s, double m) const {
    const Table& tab = tables_[s];
    const auto& cum = tab.cum_abs;
    if (m <= 0.0) return tab.u.front();
    if (m >= cum.back()) return tab.u.back();
    std::size_t j = std::size_t(std::upper_bound(cum.begin(), cum.end(), m) - cum.begin());
    j = std::clamp<std::size_t>(j, 1, cum.size() - 1) - 1;
    const double target = m - cum[j];
    const double panel_mass = cum[j + 1] - cum[j];
    double lo = tab.u[j], hi = tab.u[j + 1];
    if (panel_mass <= 0.0) return lo;
    double u = lo + (hi - lo) * std::clamp(target / panel_mass, 0.0, 1.0);
    for (int it = 0; it < 200; ++it) {
      const double diff = partial(tab, tab.u[j], u, true) - target;
      if (std::fabs(diff) <= 1e-15 * std::max(panel_mass, total_)) return u;
      (diff > 0.0 ? hi : lo) = u;
      const double dens = std::fabs(density(tab, u));
      double next = dens > 0.0 ? u - diff / dens : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == u || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi)))
        return next;
      u = next;
    }
    throw NonConvergence("MassMap: inverse did not converge");
  }

  // Global mass coordinate m in [0, total] -> (segment, u).
  std::pair<std::size_t, double> locate(double m) const {
    std::size_t s = 0;
    while (s + 1 < tables_.size() && m > offsets_[s] + segment_mass(s)) ++s;
    while (s + 1 < tables_.size() && segment_mass(s) == 0.0) ++s;
    return {s, inverse(s, m - offsets_[s])};
  }

 private:
  struct Table {
    LineSegment seg;
    std::vector<double> u, cum_abs, cum_signed;
  };

  double density(const Table& tab, double u) const {
    const auto [t, jac] = tab.seg.line.map(u);
    if (!tab.seg.line.interior(t)) return 0.0;
    const auto y = tab.seg.at(t);
    const double w = weight_.eval(y);
    return w == 0.0 ? 0.0 : w * jac;
  }

  double partial(const Table& tab, double a, double b, bool absolute) const {
    if (!(b > a)) return 0.0;
    std::vector<double> y = tab.seg.fixed;
    auto f = [&](double u) {
      const auto [t, jac] = tab.seg.line.map(u);
      if (!tab.seg.line.interior(t)) return 0.0;
      y[tab.seg.slot] = t;
      const double w = weight_.eval(std::span<const double>(y));
      if (w == 0.0) return 0.0;
      return (absolute ? std::fabs(w) : w) * jac;
    };
    return integrate_1d(f, Interval1D::finite(a, b), opt_).value;
  }

  double cumulative(std::size_t s, double u, bool absolute) const {
    const Table& tab = tables_[s];
    const auto& cum = absolute ? tab.cum_abs : tab.cum_signed;
    if (u <= tab.u.front()) return 0.0;
    if (u >= tab.u.back()) return cum.back();
    std::size_t j = std::size_t(std::upper_bound(tab.u.begin(), tab.u.end(), u) - tab.u.begin()) - 1;
    return cum[j] + partial(tab, tab.u[j], u, absolute);
  }

  WeightFn weight_;
  QuadOptions opt_;
  std::vector<Table> tables_;
  std::vector<double> offsets_;
  double total_ = 0.0;
};

struct NetworkTerm {
  double coefficient = 0.0;
  std::vector<double> param;
};

// sum_i c_i Phi(y_i): a simple-function approximation of the Bochner integral.
struct QuadNetwork {
  UnitFamily family;
  std::vector<NetworkTerm> terms;
  std::string provenance;

  double abs_coefficient_sum() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::fabs(t.coefficient);
    return s;
  }
};

enum class SynthesisScheme { midpoint_equal_measure, midpoint_uniform };

// Splits the parameter lines into n cells P_i and returns c_i = int_{P_i} w dmu
// with y_i the cell's mass midpoint (equal-measure) or coordinate midpoint
// (uniform). Cells are distributed over lines in proportion to their |w|-mass.
inline QuadNetwork synthesize_network(const IntegralRep& rep, int n,
                                      SynthesisScheme scheme = SynthesisScheme::midpoint_equal_measure,
                                      int panels = 512) {
  if (n < 1) throw DomainError("synthesize_network: n must be >= 1");
  const MassMap mass(rep.weight, panels);
  QuadNetwork net{rep.family, {}, {}};
  const std::size_t S = mass.segments();

  // Largest-remainder allocation of cells to lines with nonzero mass.
  std::vector<int> cells(S, 0);
  if (mass.total() > 0.0) {
    std::vector<std::pair<double, std::size_t>> remainders;
    int used = 0;
    for (std::size_t s = 0; s < S; ++s) {
      const double share = n * mass.segment_mass(s) / mass.total();
      cells[s] = int(std::floor(share));
      used += cells[s];
      if (mass.segment_mass(s) > 0.0) remainders.push_back({share - cells[s], s});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t k = 0; used < n && k < remainders.size(); ++k, ++used) ++cells[remainders[k].second];
  } else {
    cells[0] = n;
  }

  for (std::size_t s = 0; s < S; ++s) {
    const int ns = cells[s];
    if (ns == 0) continue;
    const double ms = mass.segment_mass(s);
    std::vector<double> edges(ns + 1);
    double prev_signed = 0.0;
    edges[0] = mass.u_lo(s);
    edges[ns] = mass.u_hi(s);
    for (int i = 1; i < ns; ++i) {
      edges[i] = scheme == SynthesisScheme::midpoint_equal_measure
                     ? mass.inverse(s, ms * double(i) / ns)
                     : mass.u_lo(s) + (mass.u_hi(s) - mass.u_lo(s)) * (double(i) / ns);
    }
    for (int i = 0; i < ns; ++i) {
      const double signed_to = i + 1 == ns ? mass.signed_mass_to(s, edges[ns]) : mass.signed_mass_to(s, edges[i + 1]);
      const double c = signed_to - prev_signed;
      prev_signed = signed_to;
      const double u_rep = scheme == SynthesisScheme::midpoint_equal_measure
                               ? mass.inverse(s, ms * (i + 0.5) / ns)
                               : 0.5 * (edges[i] + edges[i + 1]);
      net.terms.push_back({c, mass.param_at(s, u_rep)});
    }
  }
  net.provenance = std::string(scheme == SynthesisScheme::midpoint_equal_measure ? "equal_mass" : "uniform") +
                   " partition, n=" + std::to_string(n) + ", lines=" + std::to_string(S) + ", rep=" + rep.name;
  return net;
}

inline double network_eval(const QuadNetwork& net, std::span<const double> x) {
  if (net.terms.empty()) throw DomainError("network_eval: empty network");
  double s = 0.0;
  for (const auto& t : net.terms) s += t.coefficient * net.family.eval(x, t.param);
  return s;
}

inline double network_eval(const QuadNetwork& net, double x) {
  return network_eval(net, std::span<const double>(&x, 1));
}

inline constexpr double kApproxErrorFloor = 1e-9;

// ||f - net||_{L^q(dom)} with f sampled through rep_eval. For finite q, errors
// below kApproxErrorFloor * ||f|| are resolved only to that absolute level.
inline double approx_error(const IntegralRep& rep, const QuadNetwork& net, double q, const DomainSpec& dom,
                           const QuadOptions& outer = {1e-8}, const QuadOptions& inner = {1e-12}) {
  if (net.terms.empty()) throw DomainError("approx_error: empty network");
  QuadOptions opt = outer;
  if (std::isfinite(q)) {
    const double f_norm = lq_norm([&](std::span<const double> x) { return rep_eval(rep, x, inner); }, dom, q, outer);
    opt.abs_tol = std::max(opt.abs_tol, std::pow(kApproxErrorFloor * f_norm, q));
  }
  return lq_norm([&](std::span<const double> x) { return rep_eval(rep, x, inner) - network_eval(net, x); }, dom, q,
                 opt);
}

// The same function written against mu_w = |w| mu with weight sgn(w): the
// parameter is the |w|-mass coordinate m in [0, ||w||_1], Lebesgue measure.
inline IntegralRep sign_split(const IntegralRep& rep, int panels = 512) {
  auto mass = std::make_shared<const MassMap>(rep.weight, panels);
  IntegralRep out = rep;
  out.name = rep.name + "/sign_split";
  const double total = mass->total();
  out.weight.space = ParamSpec::interval(Interval1D::finite(0.0, total > 0.0 ? total : 1.0));
  out.weight.l1_closed = total;
  out.weight.eval = [mass](std::span<const double> y) {
    const auto [s, u] = mass->locate(y[0]);
    const double w = mass->weight_at(s, u);
    return w > 0.0 ? 1.0 : (w < 0.0 ? -1.0 : 0.0);
  };
  const UnitEval inner = rep.family.eval;
  out.family.params = out.weight.space;
  out.family.eval = [mass, inner](std::span<const double> x, std::span<const double> y) {
    const auto [s, u] = mass->locate(y[0]);
    return inner(x, mass->param_at(s, u));
  };
  if (rep.family.breaks) {
    // jumps carried over to the mass coordinate
    out.family.breaks = [mass, jumps = rep.family.breaks](std::span<const double> x, const LineSegment&) {
      std::vector<double> m;
      for (std::size_t s = 0; s < mass->segments(); ++s) {
        const auto& seg = mass->segment(s);
        for (double t : jumps(x, seg))
          if (seg.line.interior(t)) m.push_back(mass->segment_offset(s) + mass->abs_mass_to(s, seg.line.inverse(t)));
      }
      return m;
    };
  }
  return out;
}

struct CostPart {
  WeightFn weight;
  UnitFamily family;
  double q = 2.0;
};

struct CostBreakdown {
  double total = 0.0;
  std::vector<double> parts;  // ||w_i||_1 * ess sup ||Phi_i||
};

// sum_i ||w_i||_1 ||Phi_i||_inf, the cost of a multi-family approximation.
inline CostBreakdown multi_family_cost(const std::vector<CostPart>& parts, const QuadOptions& opt = {}) {
  CostBreakdown out;
  for (const auto& p : parts) {
    const double l1 = weight_l1(p.weight, opt);
    const double c = l1 == 0.0 ? 0.0 : l1 * ess_sup_unit_norm(p.weight, p.family, p.q).value;
    out.parts.push_back(c);
    out.total += c;
  }
  return out;
}

// --- bundled representations ----------------------------------------------

// d = 1 half-line units theta(e x + b) with weight sech^2(b) on e = +1:
// f(x) = 1 + tanh(x), ||w||_1 = 2, sup norm ambient space.
inline IntegralRep heaviside_tanh_rep(double window = 20.0) {
  IntegralRep rep;
  rep.name = "heaviside_tanh";
  rep.family = heaviside_family(1);
  rep.weight.space = ParamSpec::sphere_cross_line(1);
  rep.weight.eval = [](std::span<const double> y) {
    if (y[0] < 0.0) return 0.0;
    const double c = std::cosh(y[1]);
    return 1.0 / (c * c);
  };
  rep.weight.l1_closed = 2.0;
  rep.target = DomainSpec::whole_space(1);
  rep.target.window = window;
  rep.q = rep.family.ambient_q;
  return rep;
}

// Every unit equals the same function g(x) = exp(-x^2) in L^2(R); w = 1 on (0, 1).
// The bound ||f|| <= ||w||_1 M holds with equality.
inline IntegralRep constant_unit_rep() {
  IntegralRep rep;
  rep.name = "constant_unit";
  const double g_norm = gaussian_norm_closed(1.0, 2.0, 1);
  rep.family.name = "constant_unit";
  rep.family.point_dim = 1;
  rep.family.params = ParamSpec::interval(Interval1D::finite(0.0, 1.0));
  rep.family.eval = [](std::span<const double> x, std::span<const double>) { return std::exp(-x[0] * x[0]); };
  rep.family.unit_lq_norm = [](std::span<const double>, double p) {
    return std::isinf(p) ? 1.0 : gaussian_norm_closed(1.0, p, 1);
  };
  rep.family.ambient_q = 2.0;
  rep.family.sup_unit_norm = g_norm;
  rep.weight.space = rep.family.params;
  rep.weight.eval = [](std::span<const double>) { return 1.0; };
  rep.weight.l1_closed = 1.0;
  rep.target = DomainSpec::whole_space(1, true);
  rep.q = 2.0;
  return rep;
}

// --- a representation that is pointwise but not Bochner integrable ----------

// ||h(y)||_{L^1(0,1)} for h(y)(x) = y^{-x}: (1 - 1/y) / log y.
inline double counterexample_unit_norm(double y) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("counterexample_unit_norm: y must lie in (0, 1)");
  return (1.0 - 1.0 / y) / std::log(y);
}

// h(y)(x) = y^{-x} on Y = Omega = (0, 1), w = 1. The endpoint power 10 removes
// the y^{-x} singularity at y = 0 for x <= 0.9.
inline IntegralRep counterexample_rep() {
  IntegralRep rep;
  rep.name = "counterexample";
  rep.family.name = "power_y^-x";
  rep.family.point_dim = 1;
  rep.family.params = ParamSpec::interval(Interval1D::finite(0.0, 1.0, 10));
  rep.family.eval = [](std::span<const double> x, std::span<const double> y) { return std::pow(y[0], -x[0]); };
  rep.family.unit_lq_norm = [](std::span<const double> y, double p) {
    if (p != 1.0) throw DomainError("counterexample family: only the L^1 norm has a closed form");
    return counterexample_unit_norm(y[0]);
  };
  rep.family.ambient_q = 1.0;
  rep.family.sup_unit_norm = std::numeric_limits<double>::infinity();
  rep.family.closed_form_norm = true;
  rep.weight.space = rep.family.params;
  rep.weight.eval = [](std::span<const double>) { return 1.0; };
  rep.weight.l1_closed = 1.0;
  rep.target = DomainSpec::interval(0.0, 1.0);
  rep.q = 1.0;
  return rep;
}

struct DivergenceRow {
  double eps = 0.0;
  double truncated = 0.0;    // int_eps^1 ||h(y)||_{L^1} dy
  double lower_bound = 0.0;  // (1/2) ln(ln(1/eps) / ln 2)
};

// Truncated Bochner-norm integrals of the counterexample. With y = e^{-z} the
// integrand becomes (1 - e^{-z}) / z on [0, ln(1/eps)], which stays smooth even
// for eps near the smallest normal double.
inline std::vector<DivergenceRow> divergence_probe(const std::vector<double>& cutoffs,
                                                   const QuadOptions& opt = {1e-13}) {
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    if (!(cutoffs[k] > 0.0 && cutoffs[k] < 0.5))
      throw DomainError("divergence_probe: cutoffs must lie in (0, 1/2)");
    if (k > 0 && !(cutoffs[k] < cutoffs[k - 1]))
      throw DomainError("divergence_probe: cutoffs must be strictly decreasing");
  }
  auto integrand = [](double z) { return z == 0.0 ? 1.0 : -std::expm1(-z) / z; };
  std::vector<DivergenceRow> rows;
  double acc = 0.0, z_prev = 0.0;
  for (double eps : cutoffs) {
    const double z = -std::log(eps);
    acc += integrate_1d(integrand, Interval1D::finite(z_prev, z), opt).value;
    z_prev = z;
    rows.push_back({eps, acc, 0.5 * std::log(z / std::log(2.0))});
  }
  return rows;
}

}  // namespace intrep
