#pragma once

// Gamma, log-Gamma, digamma and trigamma for positive real arguments.
//
// log_gamma/gamma_fn use the Lanczos approximation (g = 7, 9 terms) with the
// reflection formula below 1/2. digamma/trigamma shift the argument upward by
// recurrence until x >= 10 and then sum the Bernoulli asymptotic series.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "intrep/errors.hpp"

namespace intrep {

namespace detail {

inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// Lanczos series A(z) for Gamma(z + 1), z >= -1/2.
inline double lanczos_sum(double z) {
  double a = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) a += kLanczosCoeff[i] / (z + double(i));
  return a;
}

inline double log_gamma_unchecked(double x) {
  using std::numbers::pi;
  if (x < 0.5) return std::log(pi / std::sin(pi * x)) - log_gamma_unchecked(1.0 - x);
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

}  // namespace detail

inline double log_gamma(double x) {
  detail::require_positive(x, "log_gamma");
  return detail::log_gamma_unchecked(x);
}

inline double gamma_fn(double x) {
  using std::numbers::pi;
  detail::require_positive(x, "gamma_fn");
  if (x < 0.5) return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
  if (x > 171.7) return INFINITY;
  const double z = x - 1.0;
  const double t = z + detail::kLanczosG + 0.5;
  // t^(z+1/2) is split in two halves so it does not overflow before e^-t is applied.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * pi) * half * (half * std::exp(-t)) * detail::lanczos_sum(z);
}

inline double digamma(double x) {
  detail::require_positive(x, "digamma");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r2 = 1.0 / (x * x);
  const double series =
      r2 * (1.0 / 12 -
            r2 * (1.0 / 120 -
                  r2 * (1.0 / 252 -
                        r2 * (1.0 / 240 -
                              r2 * (1.0 / 132 - r2 * (691.0 / 32760 - r2 * (1.0 / 12)))))));
  return acc + std::log(x) - 0.5 / x - series;
}

inline double trigamma(double x) {
  detail::require_positive(x, "trigamma");
  double acc = 0.0;
  while (x < 10.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / x;
  const double r2 = r * r;
  // Bernoulli numbers B2..B14 divided into the odd powers.
  const double series =
      r2 * r *
      (1.0 / 6 -
       r2 * (1.0 / 30 -
             r2 * (1.0 / 42 -
                   r2 * (1.0 / 30 - r2 * (5.0 / 66 - r2 * (691.0 / 2730 - r2 * (7.0 / 6)))))));
  return acc + r + 0.5 * r2 + series;
}

}  // namespace intrep
