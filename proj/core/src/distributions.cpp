// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#include "citefit/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace citefit {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLnHalf = -0.69314718055994530942;     // ln(1/2)
constexpr double kHalfLn2Pi = 0.91893853320467274178;   // ln(2*pi)/2

// ln(sf(x1) - sf(x2)) for 0 <= x1 < x2.
double log_sf_diff(double x1, double x2) {
  const double a = log_normal_sf(x1);
  const double b = log_normal_sf(x2);
  return a + std::log1p(-std::exp(b - a));
}

}  // namespace

void HookedParams::validate() const {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw std::domain_error("hooked power law: alpha must be finite and > 1");
  if (!(b > 0.0) || !std::isfinite(b))
    throw std::domain_error("hooked power law: b must be finite and > 0");
}

void DlnParams::validate() const {
  if (!std::isfinite(mu))
    throw std::domain_error("discretised lognormal: mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::domain_error("discretised lognormal: sigma must be finite and > 0");
}

double normal_cdf(double z) {
  if (std::isnan(z)) throw std::domain_error("normal_cdf: z must not be NaN");
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double log_normal_sf(double z) {
  if (std::isnan(z)) throw std::domain_error("log_normal_sf: z must not be NaN");
  if (z < 0.0) {
    // sf(z) = 1 - sf(-z), and sf(-z) <= 1/2 keeps log1p well conditioned.
    return std::log1p(-std::exp(log_normal_sf(-z)));
  }
  if (z < 36.0) return std::log(0.5 * std::erfc(z * kInvSqrt2));
  // erfc underflows past z ~ 37.6; continue with the asymptotic series
  //   sf(z) = phi(z)/z * (1 - 1/z^2 + 3/z^4 - 15/z^6 + 105/z^8 - ...)
  const double iz2 = 1.0 / (z * z);
  const double series = ((105.0 * iz2 - 15.0) * iz2 + 3.0) * iz2 - 1.0;
  return -0.5 * z * z - kHalfLn2Pi - std::log(z) + std::log1p(series * iz2);
}

double log_normal_interval(double zl, double zh) {
  if (std::isnan(zl) || std::isnan(zh))
    throw std::domain_error("log_normal_interval: bounds must not be NaN");
  if (!(zl < zh))
    throw std::domain_error("log_normal_interval: requires zl < zh");
  // Tails are evaluated as survival-function differences so the leading 1
  // never cancels; an interval spanning zero is safe in plain erf.
  if (zh <= 0.0) return log_sf_diff(-zh, -zl);
  if (zl >= 0.0) return log_sf_diff(zl, zh);
  const double v = 0.5 * (std::erf(zh * kInvSqrt2) - std::erf(zl * kInvSqrt2));
  return std::log(v);
}

double log_hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !std::isfinite(s))
    throw std::domain_error("log_hurwitz_zeta: requires s > 1");
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("log_hurwitz_zeta: requires a > 0");
  const double la = std::log(a);
  // Terms are scaled by a^s so the running sum starts at exactly 1; the
  // final result is -s*ln(a) + ln(scaled sum).
  long long m = 16;
  const double need = 10.0 * s - a;  // Euler-Maclaurin wants a + m >= 10 s
  if (need > 16.0) m = static_cast<long long>(std::ceil(need));
  double q = 1.0;
  for (long long j = 1; j < m; ++j) {
    const double x = a + static_cast<double>(j);
    const double t = std::exp(-s * (std::log(x) - la));
    q += t;
    // Once even the integral tail from here is below the sum's precision,
    // the remaining terms and corrections cannot move the result.
    if (j >= 8 && t * (x / (s - 1.0) + 1.0) < q * 1e-18) {
      return -s * la + std::log(q);
    }
  }
  // Euler-Maclaurin tail from x0 = a + m:
  //   integral + f/2 + s f/(12 x0) - s(s+1)(s+2) f/(720 x0^3)
  //            + s(s+1)(s+2)(s+3)(s+4) f/(30240 x0^5)
  // with f = x0^{-s}; relative error below ~1e-13 once x0 >= 10 s.
  const double x0 = a + static_cast<double>(m);
  const double u = std::exp(-s * (std::log(x0) - la));
  const double s1 = s + 1.0, s2 = s + 2.0, s3 = s + 3.0, s4 = s + 4.0;
  const double ix0 = 1.0 / x0;
  const double tail =
      u * (x0 / (s - 1.0) + 0.5 +
           ix0 * (s / 12.0 +
                  ix0 * ix0 * (-s * s1 * s2 / 720.0 +
                               ix0 * ix0 * (s * s1 * s2 * s3 * s4 / 30240.0))));
  return -s * la + std::log(q + tail);
}

// --- hooked power law -----------------------------------------------------

HookedEvaluator::HookedEvaluator(const HookedParams& params) : params_(params) {
  params_.validate();
  log_norm_ = -log_hurwitz_zeta(params_.alpha, params_.b + 1.0);
}

double HookedEvaluator::log_pmf(Count n) const {
  if (n < 1) throw std::domain_error("hooked pmf: support starts at n = 1");
  return log_norm_ - params_.alpha * std::log(params_.b + static_cast<double>(n));
}

double HookedEvaluator::pmf(Count n) const { return std::exp(log_pmf(n)); }

double HookedEvaluator::cdf(Count n) const {
  if (n < 1) throw std::domain_error("hooked cdf: support starts at n = 1");
  // 1 - zeta_H(alpha, b+n+1) / zeta_H(alpha, b+1), via expm1 so values
  // near 1 lose nothing.
  const double log_ratio =
      log_hurwitz_zeta(params_.alpha, params_.b + static_cast<double>(n) + 1.0) +
      log_norm_;
  return -std::expm1(log_ratio);
}

double HookedEvaluator::tail_bound(Count n) const {
  if (n < 1) throw std::domain_error("hooked tail bound: support starts at n = 1");
  // sum_{m > n} (b+m)^-alpha <= integral_n^inf (b+x)^-alpha dx
  //                           = (b+n)^(1-alpha) / (alpha-1)
  const double log_bound =
      (1.0 - params_.alpha) * std::log(params_.b + static_cast<double>(n)) -
      std::log(params_.alpha - 1.0) + log_norm_;
  return std::exp(log_bound);
}

double hooked_log_norm(const HookedParams& params) {
  return HookedEvaluator(params).log_norm();
}
double hooked_norm(const HookedParams& params) {
  return std::exp(HookedEvaluator(params).log_norm());
}
double hooked_log_pmf(Count n, const HookedParams& params) {
  return HookedEvaluator(params).log_pmf(n);
}
double hooked_pmf(Count n, const HookedParams& params) {
  return HookedEvaluator(params).pmf(n);
}
double hooked_cdf(Count n, const HookedParams& params) {
  return HookedEvaluator(params).cdf(n);
}
double hooked_tail_bound(Count n, const HookedParams& params) {
  return HookedEvaluator(params).tail_bound(n);
}

// --- discretised lognormal --------------------------------------------------

DlnEvaluator::DlnEvaluator(const DlnParams& params) : params_(params) {
  params_.validate();
  zc_ = (kLnHalf - params_.mu) / params_.sigma;
  log_norm_ = log_normal_sf(zc_);
}

double DlnEvaluator::log_pmf(Count n) const {
  if (n < 1) throw std::domain_error("dln pmf: support starts at n = 1");
  const double x = static_cast<double>(n);
  const double zl = (std::log(x - 0.5) - params_.mu) / params_.sigma;
  const double zh = (std::log(x + 0.5) - params_.mu) / params_.sigma;
  return log_normal_interval(zl, zh) - log_norm_;
}

double DlnEvaluator::pmf(Count n) const { return std::exp(log_pmf(n)); }

double DlnEvaluator::cdf(Count n) const {
  if (n < 1) throw std::domain_error("dln cdf: support starts at n = 1");
  const double zh =
      (std::log(static_cast<double>(n) + 0.5) - params_.mu) / params_.sigma;
  return std::exp(log_normal_interval(zc_, zh) - log_norm_);
}

double DlnEvaluator::tail_bound(Count n) const {
  if (n < 1) throw std::domain_error("dln tail bound: support starts at n = 1");
  const double zh =
      (std::log(static_cast<double>(n) + 0.5) - params_.mu) / params_.sigma;
  return std::exp(log_normal_sf(zh) - log_norm_);
}

double dln_log_norm(const DlnParams& params) {
  return DlnEvaluator(params).log_norm();
}
double dln_norm(const DlnParams& params) {
  return std::exp(DlnEvaluator(params).log_norm());
}
double dln_log_pmf(Count n, const DlnParams& params) {
  return DlnEvaluator(params).log_pmf(n);
}
double dln_pmf(Count n, const DlnParams& params) {
  return DlnEvaluator(params).pmf(n);
}
double dln_cdf(Count n, const DlnParams& params) {
  return DlnEvaluator(params).cdf(n);
}
double dln_tail_bound(Count n, const DlnParams& params) {
  return DlnEvaluator(params).tail_bound(n);
}

}  // namespace citefit
