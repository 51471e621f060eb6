// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "citefit/types.hpp"

namespace citefit {

// Hooked power law on shifted counts n >= 1:
//
//   pmf(n) = A * (b + n)^(-alpha),   A = 1 / zeta_H(alpha, b + 1)
//
// where zeta_H is the Hurwitz zeta function.  b is stored in the
// shifted-support convention; the equivalent value for raw (unshifted)
// counts is b + 1.
struct HookedParams {
  double alpha = 2.0;  // tail exponent, > 1
  double b = 1.0;      // hook offset, > 0

  void validate() const;  // throws std::domain_error on invalid values
};

// Discretised lognormal on shifted counts n >= 1:
//
//   pmf(n) = [Phi(z(n + 1/2)) - Phi(z(n - 1/2))] / A
//   z(x)   = (ln x - mu) / sigma
//   A      = 1 - Phi(z(1/2))
//
// The lower cell edge of n = 1 is 1/2, so A renormalises the mass lying
// above ln(1/2).
struct DlnParams {
  double mu = 0.0;
  double sigma = 1.0;  // > 0

  void validate() const;
};

// Box the optimizer searches over.  Wide enough for every citation corpus
// we have seen fitted; excludes the non-convergent region alpha <= 1.
namespace param_bounds {
inline constexpr double alpha_min = 1.0001;
inline constexpr double alpha_max = 50.0;
inline constexpr double b_min = 1e-6;
inline constexpr double b_max = 1e6;
inline constexpr double sigma_min = 1e-4;
inline constexpr double sigma_max = 20.0;
inline constexpr double mu_min = -20.0;
inline constexpr double mu_max = 20.0;
}  // namespace param_bounds

// --- special functions ---------------------------------------------------

// Standard normal CDF, absolute error below 1e-12 everywhere.
double normal_cdf(double z);

// ln(1 - Phi(z)); switches to an asymptotic tail expansion once erfc
// underflows, so it stays finite and accurate for |z| in the thousands.
double log_normal_sf(double z);

// ln(Phi(zh) - Phi(zl)) for zl < zh, evaluated without catastrophic
// cancellation in either tail.
double log_normal_interval(double zl, double zh);

// ln sum_{j>=0} (a + j)^(-s) for s > 1, a > 0.  Direct summation plus an
// Euler-Maclaurin tail, all in log space so it survives a + j pushing
// terms below the double underflow threshold.
double log_hurwitz_zeta(double s, double a);

// --- hooked power law -----------------------------------------------------

double hooked_log_norm(const HookedParams& params);  // ln A
double hooked_norm(const HookedParams& params);      // A
double hooked_log_pmf(Count n, const HookedParams& params);
double hooked_pmf(Count n, const HookedParams& params);
double hooked_cdf(Count n, const HookedParams& params);
// Upper bound on 1 - cdf(n), decreasing in n (integral tail bound).
double hooked_tail_bound(Count n, const HookedParams& params);

// --- discretised lognormal --------------------------------------------------

double dln_log_norm(const DlnParams& params);  // ln A
double dln_norm(const DlnParams& params);      // A
double dln_log_pmf(Count n, const DlnParams& params);
double dln_pmf(Count n, const DlnParams& params);
double dln_cdf(Count n, const DlnParams& params);
// Exact remaining mass above n (also a valid upper bound), decreasing in n.
double dln_tail_bound(Count n, const DlnParams& params);

// Cached evaluators.  The free functions above construct one per call, so
// batch code that reuses an evaluator sees bit-identical values to the
// one-shot API.
class HookedEvaluator {
 public:
  explicit HookedEvaluator(const HookedParams& params);
  double log_pmf(Count n) const;
  double pmf(Count n) const;
  double cdf(Count n) const;
  double tail_bound(Count n) const;
  const HookedParams& params() const { return params_; }
  double log_norm() const { return log_norm_; }

 private:
  HookedParams params_;
  double log_norm_;
};

class DlnEvaluator {
 public:
  explicit DlnEvaluator(const DlnParams& params);
  double log_pmf(Count n) const;
  double pmf(Count n) const;
  double cdf(Count n) const;
  double tail_bound(Count n) const;
  const DlnParams& params() const { return params_; }
  double log_norm() const { return log_norm_; }

 private:
  DlnParams params_;
  double zc_;  // z(1/2), the renormalisation edge
  double log_norm_;
};

}  // namespace citefit
