#pragma once

// Bessel potential transforms (1 + |s|^2)^{-r/2} as integral combinations of
// L^q-normalized Gaussians, and the Gamma-function inequality they imply.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "intrep/dictionaries.hpp"
#include "intrep/errors.hpp"
#include "intrep/quadrature.hpp"
#include "intrep/representation.hpp"
#include "intrep/special.hpp"

namespace intrep {

struct BesselParams {
  int d = 1;
  double q = 2.0;
  double r = 1.0;

  void validate() const {
    if (d < 1) throw DomainError("BesselParams: d must be >= 1");
    if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("BesselParams: q must lie in [1, inf)");
    if (!(r > d / q) || !std::isfinite(r))
      throw DomainError("BesselParams: need r > d/q (r=" + std::to_string(r) + ", d/q=" + std::to_string(d / q) + ")");
  }
  // r/2 - d/2q > 0: the exponent governing both ||w_r||_1 and the t -> 0 behaviour.
  double excess() const { return 0.5 * r - 0.5 * d / q; }
};

inline double bessel_hat(const BesselParams& p, double s_norm) {
  return std::pow(1.0 + s_norm * s_norm, -0.5 * p.r);
}

inline double bessel_hat(const BesselParams& p, std::span<const double> s) {
  return std::pow(1.0 + detail::squared_norm(s), -0.5 * p.r);
}

// w_r(t) = (pi/qt)^{d/2q} t^{r/2-1} e^{-t} / Gamma(r/2)
inline double bessel_weight(const BesselParams& p, double t) {
  p.validate();
  if (!(t > 0.0)) throw DomainError("bessel_weight: t must be > 0");
  const double log_w = (p.d / (2.0 * p.q)) * std::log(std::numbers::pi / (p.q * t)) + (0.5 * p.r - 1.0) * std::log(t) - t -
                       log_gamma(0.5 * p.r);
  return std::exp(log_w);
}

// ||(1 + |s|^2)^{-r/2}||_{L^q(R^d)} = pi^{d/2q} (Gamma(qr/2 - d/2) / Gamma(qr/2))^{1/q}
inline double bessel_hat_lq_closed(const BesselParams& p) {
  p.validate();
  const double a = 0.5 * p.q * p.r - 0.5 * p.d;
  if (!(a > 0.0)) throw DomainError("bessel_hat_lq_closed: need qr/2 - d/2 > 0");
  const double log_norm = (p.d / (2.0 * p.q)) * std::log(std::numbers::pi) +
                          (log_gamma(a) - log_gamma(0.5 * p.q * p.r)) / p.q;
  return std::exp(log_norm);
}

// (pi/q)^{d/2q} Gamma(r/2 - d/2q) / Gamma(r/2) = ||w_r||_{L^1(0, inf)}, an upper
// bound on the variation norm over normalized Gaussians.
inline double bessel_variation_bound(const BesselParams& p) {
  p.validate();
  return std::exp((p.d / (2.0 * p.q)) * std::log(std::numbers::pi / p.q) + log_gamma(p.excess()) -
                  log_gamma(0.5 * p.r));
}

// Power k of the substitution t = v^k that makes t^{r/2 - d/2q - 1} dt bounded near 0.
inline int bessel_endpoint_power(const BesselParams& p) {
  return std::clamp(int(std::ceil(1.0 / p.excess() - 1e-12)), 1, 64);
}

inline IntegralRep bessel_rep(const BesselParams& p) {
  p.validate();
  IntegralRep rep;
  rep.name = "bessel(d=" + std::to_string(p.d) + ",q=" + std::to_string(p.q) + ",r=" + std::to_string(p.r) + ")";
  rep.family = gaussian_family(p.d, p.q, true);
  rep.weight.space =
      ParamSpec::interval(Interval1D::half_line(0.0, Transform::semi_infinite_log, bessel_endpoint_power(p), 2.0));
  rep.family.params = rep.weight.space;
  rep.weight.eval = [p](std::span<const double> y) { return bessel_weight(p, y[0]); };
  rep.weight.l1_closed = bessel_variation_bound(p);
  rep.target = DomainSpec::whole_space(p.d, true);
  rep.q = p.q;
  return rep;
}

// Relative residual between the Gaussian-mixture integral and the closed form
// at a point with |s| = s_norm.
inline double verify_prop61(const BesselParams& p, double s_norm, double rel_tol = 1e-12) {
  const IntegralRep rep = bessel_rep(p);
  std::vector<double> s(std::size_t(p.d), 0.0);
  s[0] = s_norm;
  const double numeric = rep_eval(rep, std::span<const double>(s), QuadOptions{rel_tol});
  const double closed = bessel_hat(p, s_norm);
  return std::fabs(numeric - closed) / closed;
}

// Radial quadrature of ||(1 + |s|^2)^{-r/2}||_{L^q(R^d)}.
inline double bessel_hat_lq_quadrature(const BesselParams& p, const QuadOptions& opt = {1e-12}) {
  p.validate();
  return lq_norm([&](std::span<const double> s) { return bessel_hat(p, s); }, DomainSpec::whole_space(p.d, true), p.q,
                 opt);
}

inline double bessel_weight_l1_quadrature(const BesselParams& p, const QuadOptions& opt = {1e-12}) {
  return weight_l1(bessel_rep(p), opt);
}

// ---------------------------------------------------------------------------

struct GammaIneqPoint {
  double a = 0.0;
  double s = 0.0;
  double q = 1.0;
  double d = 0.0;

  // d = 2q(s - a), the extremal case.
  static GammaIneqPoint extremal(double a, double s, double q) { return {a, s, q, 2.0 * q * (s - a)}; }

  void validate() const {
    if (!(s > a && a > 0.0)) throw DomainError("GammaIneqPoint: need s > a > 0");
    if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("GammaIneqPoint: need q >= 1");
    if (!(d <= 2.0 * q * (s - a) * (1.0 + 1e-12))) throw DomainError("GammaIneqPoint: need d <= 2q(s - a)");
  }
};

struct GammaIneqResult {
  double lhs = 0.0;  // q^{d/2q} (Gamma(qa)/Gamma(qs))^{1/q}
  double rhs = 0.0;  // Gamma(a)/Gamma(s)
  double slack = 0.0;
};

inline GammaIneqResult gamma_ineq_check(const GammaIneqPoint& pt) {
  pt.validate();
  const double log_rhs = log_gamma(pt.a) - log_gamma(pt.s);
  const double log_lhs = (pt.d / (2.0 * pt.q)) * std::log(pt.q) + (log_gamma(pt.q * pt.a) - log_gamma(pt.q * pt.s)) / pt.q;
  const double lhs = std::exp(log_lhs);
  const double rhs = std::exp(log_rhs);
  return {lhs, rhs, rhs - lhs};
}

// H_q(s) = log Gamma(qs) - q log Gamma(s) - s q log q
inline double h_q(double s, double q) {
  if (!(s > 0.0)) throw DomainError("h_q: s must be > 0");
  if (!(q >= 1.0)) throw DomainError("h_q: q must be >= 1");
  return log_gamma(q * s) - q * log_gamma(s) - s * q * std::log(q);
}

// A_s(q) = psi(qs) - psi(s) - log q, so that dH_q/ds = q A_s(q).
inline double a_s(double q, double s) {
  if (!(s > 0.0)) throw DomainError("a_s: s must be > 0");
  if (!(q >= 1.0)) throw DomainError("a_s: q must be >= 1");
  return digamma(q * s) - digamma(s) - std::log(q);
}

}  // namespace intrep
