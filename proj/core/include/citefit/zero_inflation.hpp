// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <variant>

#include "citefit/distributions.hpp"

namespace citefit {

enum class Family { DiscretisedLognormal, HookedPowerLaw };

// A base distribution plus a point mass of weight p at n = 1:
//
//   pmf(n) = p + (1 - p) * base_pmf(1)   for n = 1
//   pmf(n) =     (1 - p) * base_pmf(n)   for n > 1
//
// p is the estimated share of articles that were never going to be cited
// (the "uncitable" share).  During fitting p is the exact rational k / N;
// both the integer k and the real p are kept so no precision is lost
// before the API boundary.  A base model is the p = 0, k = 0 case.
struct ZeroInflatedModel {
  std::variant<DlnParams, HookedParams> base = DlnParams{};
  double p = 0.0;
  Count k = 0;

  Family family() const;
  const DlnParams& dln() const { return std::get<DlnParams>(base); }
  const HookedParams& hooked() const { return std::get<HookedParams>(base); }
  void validate() const;  // base params valid, 0 <= p < 1, k >= 0
};

ZeroInflatedModel base_model(const DlnParams& params);
ZeroInflatedModel base_model(const HookedParams& params);
ZeroInflatedModel inflated_model(const DlnParams& params, Count k, Count n_total);
ZeroInflatedModel inflated_model(const HookedParams& params, Count k, Count n_total);

double zi_pmf(Count n, const ZeroInflatedModel& model);
double zi_log_pmf(Count n, const ZeroInflatedModel& model);
// F(n) = p + (1 - p) * F_base(n) for n >= 1.
double zi_cdf(Count n, const ZeroInflatedModel& model);

// p = k / n_total, the maximum-likelihood inflation weight once the number
// of inflated ones is pinned at k.  Requires 0 <= k < n_total.
double mle_p_for_k(Count k, Count n_total);

// Converts the log-likelihood of a base fit on a k-truncated dataset (the
// dataset with k of its r ones removed) into the zero-inflated
// log-likelihood of the FULL dataset at p = k / n_total:
//
//   full = trunc - (r - k) ln f1 + (N - r) ln(1 - k/N)
//               + r ln(k/N + (1 - k/N) f1)
//
// where f1 is the base pmf at 1 under the truncated-fit parameters.
// k = 0 returns trunc_loglik exactly.  Throws std::domain_error when
// k > r, k = n_total, or f1 is outside (0, 1).
double zi_loglik_from_truncated(double trunc_loglik, double f1, Count k,
                                Count r, Count n_total);

// Same conversion with f1 supplied as a log-probability, which is how the
// fitter carries it to dodge underflow; requires log_f1 finite and < 0.
double zi_loglik_from_truncated_log(double trunc_loglik, double log_f1,
                                    Count k, Count r, Count n_total);

// Cached evaluator over the mixture; bit-identical to the free functions.
class ZiEvaluator {
 public:
  explicit ZiEvaluator(const ZeroInflatedModel& model);
  double log_pmf(Count n) const;
  double pmf(Count n) const;
  double cdf(Count n) const;
  double base_tail_bound(Count n) const;
  const ZeroInflatedModel& model() const { return model_; }

 private:
  ZeroInflatedModel model_;
  std::variant<DlnEvaluator, HookedEvaluator> base_;
  double log_p_;    // ln p, -inf when p = 0
  double log_1mp_;  // ln(1 - p)
};

}  // namespace citefit
