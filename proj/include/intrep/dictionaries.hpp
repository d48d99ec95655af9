#pragma once

// Parametrized unit families y -> Phi(y), Phi(y)(x) = phi(x, y).

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "intrep/errors.hpp"
#include "intrep/quadrature.hpp"

namespace intrep {

// One line of a parameter space: the parameter vector is `fixed` with the
// line coordinate written into `slot`. Lebesgue measure along the line times
// counting measure over the discrete labels.
struct LineSegment {
  std::vector<double> fixed;
  std::size_t slot = 0;
  Interval1D line;

  std::vector<double> at(double t) const {
    std::vector<double> y = fixed;
    y[slot] = t;
    return y;
  }
};

// The parameter space Y together with its measure mu.
struct ParamSpec {
  enum class Kind {
    interval,           // y = {t} (or {t, tag} when tags > 0), Lebesgue on `line`
    sphere_cross_line,  // y = {e_1..e_d, b}, surface measure x Lebesgue
    finite_set,         // y in `points`, counting measure scaled by `weights`
  };

  Kind kind = Kind::interval;
  Interval1D line;
  int tags = 0;        // discrete labels carried next to the interval coordinate
  int sphere_dim = 1;  // d for S^{d-1}
  std::vector<std::vector<double>> points;
  std::vector<double> weights;

  static ParamSpec interval(Interval1D line) { return {Kind::interval, line}; }
  static ParamSpec sphere_cross_line(int d, double scale = 1.0) {
    ParamSpec p;
    p.kind = Kind::sphere_cross_line;
    p.line = Interval1D::real_line(scale);
    p.sphere_dim = d;
    return p;
  }
  static ParamSpec finite_set(std::vector<std::vector<double>> pts, std::vector<double> w) {
    ParamSpec p;
    p.kind = Kind::finite_set;
    p.points = std::move(pts);
    p.weights = std::move(w);
    return p;
  }

  std::size_t param_size() const {
    switch (kind) {
      case Kind::interval: return tags > 0 ? 2 : 1;
      case Kind::sphere_cross_line: return std::size_t(sphere_dim) + 1;
      case Kind::finite_set: return points.empty() ? 0 : points.front().size();
    }
    return 0;
  }

  void validate() const {
    if (kind == Kind::finite_set) {
      if (points.empty() || points.size() != weights.size())
        throw DomainError("ParamSpec: finite set needs one weight per point");
      for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("ParamSpec: counting weights must be finite and >= 0");
      return;
    }
    line.validate();
    if (kind == Kind::sphere_cross_line && sphere_dim < 1)
      throw DomainError("ParamSpec: sphere dimension must be >= 1");
  }

  // Lines making up Y. S^0 x R is two copies of R (counting measure on {-1, +1});
  // higher spheres are evaluation-only.
  std::vector<LineSegment> segments() const {
    validate();
    switch (kind) {
      case Kind::interval: {
        if (tags == 0) return {LineSegment{{0.0}, 0, line}};
        std::vector<LineSegment> out;
        for (int k = 0; k < tags; ++k) out.push_back({{0.0, double(k)}, 0, line});
        return out;
      }
      case Kind::sphere_cross_line:
        if (sphere_dim != 1)
          throw UnsupportedDimension("ParamSpec: integration over S^{d-1} x R is only built for d = 1");
        return {LineSegment{{-1.0, 0.0}, 1, line}, LineSegment{{1.0, 0.0}, 1, line}};
      case Kind::finite_set:
        throw DomainError("ParamSpec: a finite set has no line segments");
    }
    return {};
  }
};

// Line coordinates where the integrand jumps along a segment.
using SegmentBreaks = std::function<std::vector<double>(const LineSegment&)>;

// int_Y g(y) dmu(y).
template <class G>
QuadResult integrate_params(const ParamSpec& space, G&& g, const QuadOptions& opt = {},
                            const SegmentBreaks& breaks = {}) {
  if (space.kind == ParamSpec::Kind::finite_set) {
    space.validate();
    QuadResult r;
    for (std::size_t k = 0; k < space.points.size(); ++k) {
      if (space.weights[k] == 0.0) continue;
      r.value += space.weights[k] * g(std::span<const double>(space.points[k]));
      ++r.evaluations;
    }
    return r;
  }
  QuadResult total;
  for (const auto& seg : space.segments()) {
    std::vector<double> y = seg.fixed;
    auto along = [&](double t) {
      y[seg.slot] = t;
      return g(std::span<const double>(y));
    };
    const std::vector<double> cuts = breaks ? breaks(seg) : std::vector<double>{};
    const auto r = integrate_1d(along, seg.line, opt, cuts);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
  }
  return total;
}

using PointFn = std::function<double(std::span<const double>)>;
using UnitEval = std::function<double(std::span<const double> x, std::span<const double> y)>;
using UnitNorm = std::function<double(std::span<const double> y, double q)>;
// For fixed x, the coordinates along seg at which phi(x, .) jumps.
using UnitBreaks = std::function<std::vector<double>(std::span<const double> x, const LineSegment& seg)>;

// A dictionary G = {Phi(y) : y in Y} inside X = L^q(Omega).
struct UnitFamily {
  std::string name;
  int point_dim = 1;
  ParamSpec params;
  UnitEval eval;
  UnitNorm unit_lq_norm;     // ||Phi(y)||_{L^q}; may be +inf when Phi(y) is not in L^q
  double ambient_q = 2.0;    // the q of X
  double sup_unit_norm = 1;  // s_{G,X} = sup_y ||Phi(y)||_X, +inf when unbounded
  bool closed_form_norm = true;
  UnitBreaks breaks;         // empty when phi(x, .) is continuous
};

// ||gamma_b||_{L^q(R^d)} for gamma_b(x) = exp(-b |x|^2).
inline double gaussian_norm_closed(double b, double q, int d) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("gaussian_norm_closed: b must be > 0");
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("gaussian_norm_closed: q must lie in [1, inf)");
  if (d < 1) throw DomainError("gaussian_norm_closed: d must be >= 1");
  return std::pow(std::numbers::pi / (q * b), d / (2.0 * q));
}

namespace detail {
inline double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}
inline double gaussian_width(std::span<const double> y) {
  const double t = y[0];
  if (!(t > 0.0)) throw DomainError("gaussian unit: width parameter t must be > 0");
  return t;
}
}  // namespace detail

// Gaussians exp(-t |x|^2), t in (0, inf), optionally divided by their L^q norm.
inline UnitFamily gaussian_family(int d, double q, bool normalized) {
  if (d < 1) throw DomainError("gaussian_family: d must be >= 1");
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("gaussian_family: q must lie in [1, inf)");
  UnitFamily fam;
  fam.name = normalized ? "gaussian_normalized" : "gaussian";
  fam.point_dim = d;
  fam.params = ParamSpec::interval(Interval1D::half_line(0.0, Transform::semi_infinite_log, 1, 2.0));
  fam.ambient_q = q;
  fam.eval = [d, q, normalized](std::span<const double> x, std::span<const double> y) {
    const double t = detail::gaussian_width(y);
    const double g = std::exp(-t * detail::squared_norm(x));
    return normalized ? g / gaussian_norm_closed(t, q, d) : g;
  };
  fam.unit_lq_norm = [d, q, normalized](std::span<const double> y, double p) {
    const double t = detail::gaussian_width(y);
    const double raw = std::isinf(p) ? 1.0 : gaussian_norm_closed(t, p, d);
    return normalized ? raw / gaussian_norm_closed(t, q, d) : raw;
  };
  // Unnormalized norms (pi/qt)^{d/2q} are unbounded as t -> 0.
  fam.sup_unit_norm = normalized ? 1.0 : std::numeric_limits<double>::infinity();
  return fam;
}

// Characteristic functions of closed half-spaces {x : e.x + b >= 0}, with
// y = (e_1, ..., e_d, b), |e| = 1. Ambient space: bounded functions, sup norm.
inline UnitFamily heaviside_family(int d) {
  if (d < 1) throw DomainError("heaviside_family: d must be >= 1");
  UnitFamily fam;
  fam.name = "heaviside";
  fam.point_dim = d;
  fam.params = ParamSpec::sphere_cross_line(d);
  fam.ambient_q = std::numeric_limits<double>::infinity();
  fam.eval = [d](std::span<const double> x, std::span<const double> y) {
    double norm2 = 0.0, dot = 0.0;
    for (int k = 0; k < d; ++k) {
      norm2 += y[k] * y[k];
      dot += y[k] * x[k];
    }
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-12)
      throw DomainError("heaviside unit: direction e must have unit length");
    return dot + y[d] >= 0.0 ? 1.0 : 0.0;
  };
  fam.breaks = [d](std::span<const double> x, const LineSegment& seg) {
    if (seg.slot != std::size_t(d)) return std::vector<double>{};
    double dot = 0.0;
    for (int k = 0; k < d; ++k) dot += seg.fixed[k] * x[k];
    return std::vector<double>{-dot};
  };
  fam.unit_lq_norm = [](std::span<const double>, double p) {
    return std::isinf(p) ? 1.0 : std::numeric_limits<double>::infinity();
  };
  fam.sup_unit_norm = 1.0;
  return fam;
}

enum class IntervalSide { left = 0, right = 1, full = 2 };

// chi_[a,c], chi_[c,b] and chi_[a,b] on [a, b]; y = (c, side).
inline UnitFamily interval_char_family(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("interval_char_family: require finite a < b");
  UnitFamily fam;
  fam.name = "interval_char";
  fam.point_dim = 1;
  fam.params = ParamSpec::interval(Interval1D::finite(a, b));
  fam.params.tags = 3;
  fam.ambient_q = std::numeric_limits<double>::infinity();
  auto bounds = [a, b](std::span<const double> y) {
    const auto side = static_cast<IntervalSide>(int(y[1]));
    if (side == IntervalSide::full) return std::pair{a, b};
    const double c = y[0];
    if (!(c > a && c < b)) throw DomainError("interval unit: breakpoint c must lie in (a, b)");
    return side == IntervalSide::left ? std::pair{a, c} : std::pair{c, b};
  };
  fam.eval = [bounds](std::span<const double> x, std::span<const double> y) {
    const auto [lo, hi] = bounds(y);
    return x[0] >= lo && x[0] <= hi ? 1.0 : 0.0;
  };
  fam.breaks = [](std::span<const double> x, const LineSegment& seg) {
    if (seg.slot != 0 || seg.fixed.size() < 2 || int(seg.fixed[1]) == int(IntervalSide::full))
      return std::vector<double>{};
    return std::vector<double>{x[0]};
  };
  fam.unit_lq_norm = [bounds](std::span<const double> y, double p) {
    const auto [lo, hi] = bounds(y);
    return std::isinf(p) ? 1.0 : std::pow(hi - lo, 1.0 / p);
  };
  fam.sup_unit_norm = 1.0;
  return fam;
}

}  // namespace intrep
