#pragma once

// Adaptive Gauss-Kronrod quadrature on finite, semi-infinite and doubly
// infinite intervals, iterated/radial integration on R^d (d <= 4) and L^q norms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "intrep/errors.hpp"
#include "intrep/special.hpp"

namespace intrep {

// How the integration variable t is reached from the canonical variable u the
// adaptive rule actually subdivides.
enum class Transform {
  identity,                // t = u (or t = lo + u^k with an endpoint power)
  semi_infinite_exp,       // t - lo = (-scale * ln(1-u))^k, u in (0, 1)
  semi_infinite_rational,  // t - lo = (scale * u/(1-u))^k, u in (0, 1)
  semi_infinite_log,       // t - lo = (exp(scale * u))^k,  scale * u in [-40, 40] (truncated)
  doubly_infinite_tanh,    // t = scale * atanh(u),          u in (-1, 1)
  doubly_infinite_sinh,    // t = scale * sinh(u),           u in [-40, 40] (truncated)    // t = scale * atanh(u),         u in (-1, 1)
};

struct Interval1D {
  // Truncation of the log and sinh maps: v in [e^-40, e^40] (about
  // [4e-18, 2e17]) for log, |t| <= scale sinh(40) for sinh. Mass outside is dropped.
  static constexpr double kLogSpan = 40.0;

  double lo = 0.0;
  double hi = 1.0;
  Transform transform = Transform::identity;
  // Substitution t - lo = v^k at the finite endpoint (the upper one when lo is
  // -inf). k > 1 removes an algebraic singularity (t - lo)^alpha once
  // k * (alpha + 1) >= 1.
  int endpoint_power = 1;
  double scale = 1.0;

  static Interval1D finite(double lo, double hi, int power = 1) {
    return {lo, hi, Transform::identity, power, 1.0};
  }
  static Interval1D half_line(double lo, Transform tr = Transform::semi_infinite_exp,
                              int power = 1, double scale = 1.0) {
    return {lo, INFINITY, tr, power, scale};
  }
  static Interval1D real_line(double scale = 1.0, Transform tr = Transform::doubly_infinite_sinh) {
    return {-INFINITY, INFINITY, tr, 1, scale};
  }

  void validate() const {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
      throw DomainError("Interval1D: require lo < hi");
    if (endpoint_power < 1) throw DomainError("Interval1D: endpoint_power must be >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("Interval1D: scale must be > 0");
    const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    switch (transform) {
      case Transform::identity:
        if (lo_inf || hi_inf) throw DomainError("Interval1D: infinite endpoint needs a transform");
        break;
      case Transform::semi_infinite_exp:
      case Transform::semi_infinite_rational:
      case Transform::semi_infinite_log:
        if (lo_inf == hi_inf) throw DomainError("Interval1D: semi-infinite transform needs exactly one infinite endpoint");
        break;
      case Transform::doubly_infinite_tanh:
      case Transform::doubly_infinite_sinh:
        if (!(lo_inf && hi_inf)) throw DomainError("Interval1D: real-line transform needs (-inf, inf)");
        if (endpoint_power != 1) throw DomainError("Interval1D: no endpoint power on the real line");
        break;
    }
  }

  bool finite_domain() const { return transform == Transform::identity; }

  // Nodes that round onto an endpoint (a null set) contribute nothing.
  bool interior(double t) const { return t > lo && t < hi; }

  double u_lo() const {
    switch (transform) {
      case Transform::identity: return endpoint_power == 1 ? lo : 0.0;
      case Transform::doubly_infinite_tanh: return -1.0;
      case Transform::semi_infinite_log: return -kLogSpan / scale;
      case Transform::doubly_infinite_sinh: return -kLogSpan;
      default: return 0.0;
    }
  }
  double u_hi() const {
    switch (transform) {
      case Transform::identity:
        return endpoint_power == 1 ? hi : std::pow(hi - lo, 1.0 / endpoint_power);
      case Transform::semi_infinite_log: return kLogSpan / scale;
      case Transform::doubly_infinite_sinh: return kLogSpan;
      default: return 1.0;
    }
  }

  // (t(u), dt/du). Only called at interior points of [u_lo, u_hi].
  std::pair<double, double> map(double u) const {
    if (transform == Transform::doubly_infinite_tanh) {
      const double one_minus_u2 = (1.0 - u) * (1.0 + u);
      return {scale * std::atanh(u), scale / one_minus_u2};
    }
    if (transform == Transform::doubly_infinite_sinh) return {scale * std::sinh(u), scale * std::cosh(u)};
    double v = u, dv = 1.0;
    if (transform == Transform::semi_infinite_exp) {
      // t = -ln(1 - u): accurate near the finite endpoint
      v = -scale * std::log1p(-u);
      dv = scale / (1.0 - u);
    } else if (transform == Transform::semi_infinite_log) {
      v = std::exp(scale * u);
      dv = v * scale;
    } else if (transform == Transform::semi_infinite_rational) {
      const double w = 1.0 - u;
      v = scale * u / w;
      dv = scale / (w * w);
    }
    double offset = v, jac = dv;
    if (endpoint_power > 1) {
      const double vk1 = std::pow(v, endpoint_power - 1);
      offset = vk1 * v;
      jac = endpoint_power * vk1 * dv;
    }
    if (transform == Transform::identity && endpoint_power == 1) return {u, 1.0};
    if (std::isinf(lo)) return {hi - offset, jac};
    return {lo + offset, jac};
  }

  // u with map(u).first == t, for t inside the domain.
  double inverse(double t) const {
    switch (transform) {
      case Transform::doubly_infinite_tanh: return std::tanh(t / scale);
      case Transform::doubly_infinite_sinh: return std::asinh(t / scale);
      default: break;
    }
    const double offset = std::isinf(lo) ? hi - t : t - lo;
    const double v = endpoint_power == 1 ? offset : std::pow(offset, 1.0 / endpoint_power);
    switch (transform) {
      case Transform::identity: return endpoint_power == 1 ? t : v;
      case Transform::semi_infinite_exp: return -std::expm1(-v / scale);
      case Transform::semi_infinite_rational: return v / (scale + v);
      case Transform::semi_infinite_log: return std::log(v) / scale;
      default: return v;
    }
  }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 4000;
  int initial_panels = 4;  // uniform starting panels for the non-logarithmic maps
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes at odd Kronrod indices 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error, abs_value;
};

template <class G>
Panel gauss_kronrod_15(G& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = g(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double magnitude = std::fabs(fc) * kKronrodWeights[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const double lo = g(c - dx), hi = g(c + dx);
    kronrod += kKronrodWeights[j] * (lo + hi);
    magnitude += kKronrodWeights[j] * (std::fabs(lo) + std::fabs(hi));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (lo + hi);
  }
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, std::fabs(kronrod - gauss), std::fabs(h) * magnitude};
}

}  // namespace detail

// Globally adaptive bisection driven by |K15 - G7| per panel. The reported
// error_estimate is the sum of those differences, which bounds the error of
// the embedded Gauss rule and so conservatively bounds the Kronrod result.
// Converged once error <= max(abs_tol, rel_tol |I|, 50 eps int |f|).
// `breaks` lists points of dom where f may jump; they become panel edges.
template <class F>
QuadResult integrate_1d(F&& f, const Interval1D& dom, const QuadOptions& opt = {},
                        std::span<const double> breaks = {}) {
  dom.validate();
  if (!(opt.rel_tol > 0.0 && opt.rel_tol < 1.0))
    throw DomainError("integrate_1d: rel_tol must lie in (0, 1)");

  long evaluations = 0;
  auto g = [&](double u) -> double {
    ++evaluations;
    const auto [t, jac] = dom.map(u);
    if (!dom.interior(t)) return 0.0;
    const double ft = f(t);
    if (ft == 0.0) return 0.0;
    const double v = ft * jac;
    if (!std::isfinite(v))
      throw NonConvergence("integrate_1d: non-finite integrand at t = " + std::to_string(t));
    return v;
  };

  auto by_error = [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; };
  std::vector<detail::Panel> active;
  std::vector<detail::Panel> frozen;  // too narrow to bisect further
  active.reserve(128);
  // Initial partition: uniform in log t (asinh t, atanh u) so every
  // decade of the original variable gets its own panel (a narrow peak can
  // otherwise fall between all 15 nodes of a coarse panel and read as zero).
  {
    std::vector<double> edges;
    const double a = dom.u_lo(), b = dom.u_hi();
    if (dom.transform == Transform::semi_infinite_log || dom.transform == Transform::doubly_infinite_sinh) {
      for (int i = 0; i <= 40; ++i) edges.push_back(a + (b - a) * (double(i) / 40));
    } else if (dom.transform == Transform::doubly_infinite_tanh) {
      constexpr int kPanels = 36;
      constexpr double kEdge = 18.0;
      edges.push_back(a);
      for (int i = 0; i <= kPanels; ++i) edges.push_back(std::tanh(-kEdge + 2.0 * kEdge * i / kPanels));
      edges.push_back(b);
    } else {
      const int panels = std::max(1, opt.initial_panels);
      for (int i = 0; i <= panels; ++i) edges.push_back(a + (b - a) * (double(i) / panels));
      edges.back() = b;
    }
    for (double t : breaks) {
      if (!dom.interior(t)) continue;
      const double u = dom.inverse(t);
      if (u > a && u < b) edges.push_back(u);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (!(edges[i + 1] > edges[i])) continue;
      active.push_back(detail::gauss_kronrod_15(g, edges[i], edges[i + 1]));
    }
    std::make_heap(active.begin(), active.end(), by_error);
  }

  auto totals = [&]() {
    double v = 0.0, e = 0.0, m = 0.0;
    for (const auto& p : frozen) v += p.value, e += p.error, m += p.abs_value;
    for (const auto& p : active) v += p.value, e += p.error, m += p.abs_value;
    return std::tuple{v, e, m};
  };

  int panels = int(active.size());
  while (true) {
    const auto [value, error, magnitude] = totals();
    // Cancellation floor: nothing below ~50 eps * int |f| is resolvable.
    const double tol = std::max({opt.abs_tol, opt.rel_tol * std::fabs(value),
                                 50.0 * std::numeric_limits<double>::epsilon() * magnitude});
    if (error <= tol) return {value, error, evaluations};
    if (active.empty())
      throw NonConvergence("integrate_1d: roundoff limit reached before tolerance", value, error);
    if (panels >= opt.max_intervals)
      throw NonConvergence("integrate_1d: interval budget exhausted", value, error);

    std::pop_heap(active.begin(), active.end(), by_error);
    const detail::Panel worst = active.back();
    active.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    if (!(mid > worst.a && mid < worst.b) ||
        width <= 64.0 * std::numeric_limits<double>::epsilon() *
                     std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    active.push_back(detail::gauss_kronrod_15(g, worst.a, mid));
    std::push_heap(active.begin(), active.end(), by_error);
    active.push_back(detail::gauss_kronrod_15(g, mid, worst.b));
    std::push_heap(active.begin(), active.end(), by_error);
    ++panels;
  }
}

template <class F>
QuadResult integrate_1d(F&& f, const Interval1D& dom, double rel_tol) {
  return integrate_1d(std::forward<F>(f), dom, QuadOptions{rel_tol});
}

// Surface area of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
inline double sphere_area(int d) {
  if (d < 1) throw DomainError("sphere_area: d must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / gamma_fn(0.5 * d);
}

// Integration domain in R^d with Lebesgue measure.
struct DomainSpec {
  enum class Region { box, whole_space };

  int dimension = 1;
  Region region = Region::box;
  std::vector<double> lo{0.0}, hi{1.0};  // box bounds, one per axis
  bool radial = false;                   // integrand depends on |x| only (whole space)
  double scale = 1.0;                    // decay length used by the infinite maps
  double window = 10.0;                  // half-width of the q = inf sampling grid
  int sup_points = 4001;                 // grid points per axis for q = inf

  static DomainSpec box(std::vector<double> lo, std::vector<double> hi) {
    DomainSpec d;
    d.dimension = static_cast<int>(lo.size());
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    return d;
  }
  static DomainSpec interval(double a, double b) { return box({a}, {b}); }
  static DomainSpec whole_space(int d, bool radial = false, double scale = 1.0) {
    DomainSpec s;
    s.dimension = d;
    s.region = Region::whole_space;
    s.lo.clear();
    s.hi.clear();
    s.radial = radial;
    s.scale = scale;
    return s;
  }

  void validate() const {
    if (dimension < 1) throw DomainError("DomainSpec: dimension must be >= 1");
    if (dimension > 4) throw UnsupportedDimension("DomainSpec: dimension above 4 is not supported");
    if (region == Region::box) {
      if (lo.size() != std::size_t(dimension) || hi.size() != std::size_t(dimension))
        throw DomainError("DomainSpec: box bounds do not match the dimension");
      for (int k = 0; k < dimension; ++k)
        if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]) || !(lo[k] < hi[k]))
          throw DomainError("DomainSpec: box bounds must be finite and ordered");
    } else if (!(scale > 0.0) || !(window > 0.0)) {
      throw DomainError("DomainSpec: scale and window must be positive");
    }
    if (sup_points < 2) throw DomainError("DomainSpec: sup_points must be >= 2");
  }
};

// f is called with a point of R^d as std::span<const double>.
//
// Radial integrands on R^d reduce to omega_d * int_0^inf f(rho e_1) rho^{d-1}
// drho, taken in log rho so that algebraic tails decay exponentially and
// features at widely separated radii get comparable resolution. Otherwise
// the integral is iterated axis by axis. budget caps integrand evaluations.
template <class F>
QuadResult integrate_nd(F&& f, const DomainSpec& dom, long budget = 50'000'000,
                        const QuadOptions& opt = {}) {
  dom.validate();
  if (budget < 1000) throw DomainError("integrate_nd: budget must be >= 1000");
  const int d = dom.dimension;
  std::array<double, 4> point{};
  long used = 0;
  auto call = [&]() -> double {
    if (++used > budget) throw NonConvergence("integrate_nd: evaluation budget exhausted");
    return f(std::span<const double>(point.data(), std::size_t(d)));
  };

  if (dom.region == DomainSpec::Region::whole_space && dom.radial) {
    const double omega = sphere_area(d);
    auto radial = [&](double rho) {
      point.fill(0.0);
      point[0] = rho;
      const double v = call();
      return v == 0.0 ? 0.0 : v * std::pow(rho, d - 1);
    };
    auto r = integrate_1d(radial, Interval1D::half_line(0.0, Transform::semi_infinite_log, 1, 2.0 * dom.scale), opt);
    return {omega * r.value, omega * r.error_estimate, used};
  }

  auto axis = [&](int k) {
    return dom.region == DomainSpec::Region::box ? Interval1D::finite(dom.lo[k], dom.hi[k])
                                                 : Interval1D::real_line(dom.scale);
  };
  // Iterate from the last axis inward; inner errors are folded in relative terms.
  auto nest = [&](auto& self, int k) -> QuadResult {
    if (k == d - 1) {
      return integrate_1d([&](double t) { point[k] = t; return call(); }, axis(k), opt);
    }
    return integrate_1d([&](double t) { point[k] = t; return self(self, k + 1).value; }, axis(k), opt);
  };
  auto r = nest(nest, 0);
  const double inner = d > 1 ? opt.rel_tol * std::fabs(r.value) : 0.0;
  return {r.value, r.error_estimate + inner, used};
}

// ||f||_{L^q(dom)}. For q = inf the result is the maximum of |f| over a uniform
// grid (sup_points per axis; [-window, window] on the whole space), which is a
// lower estimate of the essential supremum.
template <class F>
double lq_norm(F&& f, const DomainSpec& dom, double q, const QuadOptions& opt = {}) {
  if (std::isnan(q) || q < 1.0) throw DomainError("lq_norm: q must be >= 1");
  dom.validate();
  const int d = dom.dimension;
  if (std::isinf(q)) {
    std::vector<double> lo(d), hi(d);
    int axes = d;
    if (dom.region == DomainSpec::Region::box) {
      lo = dom.lo;
      hi = dom.hi;
    } else if (dom.radial) {
      axes = 1;
      lo.assign(1, 0.0);
      hi.assign(1, dom.window);
    } else {
      lo.assign(d, -dom.window);
      hi.assign(d, dom.window);
    }
    const int per_axis =
        axes == 1 ? dom.sup_points
                  : std::max(2, int(std::floor(std::pow(double(dom.sup_points), 1.0 / axes) + 1e-9)));
    std::array<double, 4> point{};
    std::array<int, 4> idx{};
    double best = 0.0;
    while (true) {
      for (int k = 0; k < axes; ++k)
        point[k] = lo[k] + (hi[k] - lo[k]) * (double(idx[k]) / double(per_axis - 1));
      best = std::max(best, std::fabs(f(std::span<const double>(point.data(), std::size_t(d)))));
      int k = 0;
      while (k < axes && ++idx[k] == per_axis) idx[k++] = 0;
      if (k == axes) break;
    }
    return best;
  }
  auto power = [&](std::span<const double> x) {
    const double v = std::fabs(f(x));
    if (q == 1.0) return v;
    if (q == 2.0) return v * v;
    return std::pow(v, q);
  };
  const auto r = integrate_nd(power, dom, 50'000'000, opt);
  return std::pow(r.value, 1.0 / q);
}

}  // namespace intrep
