// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used only by tests.  Everything
// here is written against the defining formulas (integrals and plain
// sums), deliberately sharing no code with the library, so agreement is
// evidence rather than tautology.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

// --- adaptive Simpson quadrature -------------------------------------------

namespace detail {

inline long double simpson(long double a, long double b, long double fa,
                           long double fm, long double fb) {
  return (b - a) / 6.0L * (fa + 4.0L * fm + fb);
}

inline long double adaptive_step(
    const std::function<long double(long double)>& f, long double a,
    long double b, long double fa, long double fm, long double fb,
    long double whole, long double tol, int depth) {
  const long double m = 0.5L * (a + b);
  const long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
  const long double flm = f(lm), frm = f(rm);
  const long double left = simpson(a, m, fa, flm, fm);
  const long double right = simpson(m, b, fm, frm, fb);
  const long double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0L * tol)
    return left + right + delta / 15.0L;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance tol.
inline long double integrate(const std::function<long double(long double)>& f,
                             long double a, long double b,
                             long double tol = 1e-15L) {
  if (!(a < b)) return 0.0L;
  const long double m = 0.5L * (a + b);
  const long double fa = f(a), fm = f(m), fb = f(b);
  const long double whole = detail::simpson(a, b, fa, fm, fb);
  return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

// --- discretised lognormal by quadrature ------------------------------------

// Mass of the continuous lognormal over [lo, hi] in x, integrated in the
// standardised variable t = (ln x - mu)/sigma where the integrand is the
// normal bell.  The substitution is exact, and it keeps the quadrature
// domain tens of units wide regardless of (mu, sigma), where integrating
// the x-space density over e.g. [1/2, e^{mu+12 sigma}] makes the adaptive
// splitter subdivide an interval eleven orders of magnitude wide.
inline long double lognormal_mass(long double lo, long double hi,
                                  long double mu, long double sigma,
                                  long double tol = 1e-16L) {
  if (!(lo < hi)) return 0.0L;
  const long double inv_sqrt_2pi = 0.3989422804014326779399460599343818685L;
  auto phi = [inv_sqrt_2pi](long double t) {
    return inv_sqrt_2pi * std::exp(-0.5L * t * t);
  };
  const long double tl = (std::log(lo) - mu) / sigma;
  const long double th = (std::log(hi) - mu) / sigma;
  // Split at the peak so each piece is monotone.
  if (tl < 0.0L && 0.0L < th) {
    return integrate(phi, tl, 0.0L, tol * 0.5L) +
           integrate(phi, 0.0L, th, tol * 0.5L);
  }
  return integrate(phi, tl, th, tol);
}

// pmf of the discretised lognormal on support n >= 1, renormalised over
// the mass above 1/2: quadrature over [n - 1/2, n + 1/2] divided by
// quadrature over [1/2, "infinity"].
inline long double dln_pmf(std::int64_t n, double mu, double sigma) {
  const long double m = mu, s = sigma;
  // 12 sigma in log space holds more than the 1e-16 level of tail mass.
  const long double upper = std::exp(m + 12.0L * s) + 1.0L;
  const long double num =
      lognormal_mass(n - 0.5L, n + 0.5L, m, s);
  const long double den = lognormal_mass(0.5L, upper, m, s);
  return num / den;
}

// --- Hurwitz zeta by direct summation ---------------------------------------

// sum_{j>=0} (a + j)^(-s) with a one-term trapezoid tail whose error is
// bounded by (s / 12) (a + M)^(-s - 1); M is chosen so that bound is below
// rel_tol of the crude magnitude.
inline long double hurwitz_zeta(double s, double a,
                                long double rel_tol = 1e-14L) {
  if (!(s > 1.0) || !(a > 0.0))
    throw std::invalid_argument("hurwitz_zeta oracle: need s > 1, a > 0");
  const long double ls = s, la = a;
  const long double crude =
      std::pow(la, -ls) * (la / (ls - 1.0L) + 1.0L);
  const long double tol_abs = rel_tol * crude;
  long double terms =
      std::pow(ls / 12.0L / tol_abs, 1.0L / (ls + 1.0L)) - la;
  const long double m = std::clamp(terms, 64.0L, 2e7L);
  const std::int64_t mi = static_cast<std::int64_t>(m);
  // Backward sum: small terms first.
  long double sum = 0.0L;
  for (std::int64_t j = mi - 1; j >= 0; --j)
    sum += std::pow(la + static_cast<long double>(j), -ls);
  const long double edge = la + static_cast<long double>(mi);
  sum += std::pow(edge, 1.0L - ls) / (ls - 1.0L);  // integral tail
  sum += 0.5L * std::pow(edge, -ls);               // trapezoid correction
  return sum;
}

inline long double hooked_pmf(std::int64_t n, double alpha, double b) {
  return std::pow(static_cast<long double>(b) + n,
                  -static_cast<long double>(alpha)) /
         hurwitz_zeta(alpha, b + 1.0);
}

// --- zero-inflated mixture, evaluated the long way ---------------------------

// Direct sum of log mixture probabilities; base_pmf supplies the base
// model's pmf in probability space.
inline long double zi_loglik_direct(
    const std::vector<std::int64_t>& counts, double p,
    const std::function<double(std::int64_t)>& base_pmf) {
  long double total = 0.0L;
  const long double lp = p;
  for (std::int64_t n : counts) {
    const long double base = base_pmf(n);
    const long double mix = n == 1 ? lp + (1.0L - lp) * base
                                   : (1.0L - lp) * base;
    total += std::log(mix);
  }
  return total;
}

// --- Kolmogorov-Smirnov, brute force ----------------------------------------

// Counts <= n by scanning the whole dataset for every support point.
inline double ks_brute_force(const std::vector<std::int64_t>& counts,
                             const std::function<double(std::int64_t)>& cdf) {
  const std::int64_t max_value =
      *std::max_element(counts.begin(), counts.end());
  const double n_total = static_cast<double>(counts.size());
  double worst = 0.0;
  for (std::int64_t n = 1; n <= max_value; ++n) {
    std::int64_t at_most = 0;
    for (std::int64_t value : counts)
      if (value <= n) ++at_most;
    const double d =
        std::fabs(static_cast<double>(at_most) / n_total - cdf(n));
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace oracle
