// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#include "citefit/zero_inflation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace citefit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln(e^a + e^b) without overflow; tolerates a or b being -inf.
double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

void check_conversion_counts(Count k, Count r, Count n_total) {
  if (n_total <= 0)
    throw std::domain_error("zi conversion: n_total must be positive");
  if (r < 0 || r > n_total)
    throw std::domain_error("zi conversion: need 0 <= r <= n_total");
  if (k < 0) throw std::domain_error("zi conversion: k must be >= 0");
  if (k > r) throw std::domain_error("zi conversion: k cannot exceed r");
  if (k == n_total)
    throw std::domain_error("zi conversion: k = n_total leaves no data");
}

}  // namespace

Family ZeroInflatedModel::family() const {
  return std::holds_alternative<DlnParams>(base) ? Family::DiscretisedLognormal
                                                 : Family::HookedPowerLaw;
}

void ZeroInflatedModel::validate() const {
  std::visit([](const auto& params) { params.validate(); }, base);
  if (!(p >= 0.0) || !(p < 1.0) || !std::isfinite(p))
    throw std::domain_error("zero-inflated model: p must be in [0, 1)");
  if (k < 0) throw std::domain_error("zero-inflated model: k must be >= 0");
}

ZeroInflatedModel base_model(const DlnParams& params) {
  return ZeroInflatedModel{params, 0.0, 0};
}
ZeroInflatedModel base_model(const HookedParams& params) {
  return ZeroInflatedModel{params, 0.0, 0};
}
ZeroInflatedModel inflated_model(const DlnParams& params, Count k, Count n_total) {
  return ZeroInflatedModel{params, mle_p_for_k(k, n_total), k};
}
ZeroInflatedModel inflated_model(const HookedParams& params, Count k,
                                 Count n_total) {
  return ZeroInflatedModel{params, mle_p_for_k(k, n_total), k};
}

ZiEvaluator::ZiEvaluator(const ZeroInflatedModel& model)
    : model_(model),
      base_(model.family() == Family::DiscretisedLognormal
                ? std::variant<DlnEvaluator, HookedEvaluator>(
                      DlnEvaluator(model.dln()))
                : std::variant<DlnEvaluator, HookedEvaluator>(
                      HookedEvaluator(model.hooked()))) {
  model_.validate();
  log_p_ = model_.p > 0.0 ? std::log(model_.p) : kNegInf;
  log_1mp_ = std::log1p(-model_.p);
}

double ZiEvaluator::log_pmf(Count n) const {
  const double base_lp =
      std::visit([n](const auto& ev) { return ev.log_pmf(n); }, base_);
  if (n == 1) return log_add_exp(log_p_, log_1mp_ + base_lp);
  return log_1mp_ + base_lp;
}

double ZiEvaluator::pmf(Count n) const {
  const double base_pmf =
      std::visit([n](const auto& ev) { return ev.pmf(n); }, base_);
  if (n == 1) return model_.p + (1.0 - model_.p) * base_pmf;
  return (1.0 - model_.p) * base_pmf;
}

double ZiEvaluator::cdf(Count n) const {
  const double base_cdf =
      std::visit([n](const auto& ev) { return ev.cdf(n); }, base_);
  return model_.p + (1.0 - model_.p) * base_cdf;
}

double ZiEvaluator::base_tail_bound(Count n) const {
  return std::visit([n](const auto& ev) { return ev.tail_bound(n); }, base_);
}

double zi_pmf(Count n, const ZeroInflatedModel& model) {
  return ZiEvaluator(model).pmf(n);
}
double zi_log_pmf(Count n, const ZeroInflatedModel& model) {
  return ZiEvaluator(model).log_pmf(n);
}
double zi_cdf(Count n, const ZeroInflatedModel& model) {
  return ZiEvaluator(model).cdf(n);
}

double mle_p_for_k(Count k, Count n_total) {
  if (n_total <= 0)
    throw std::domain_error("mle_p_for_k: n_total must be positive");
  if (k < 0 || k >= n_total)
    throw std::domain_error("mle_p_for_k: need 0 <= k < n_total");
  return static_cast<double>(k) / static_cast<double>(n_total);
}

double zi_loglik_from_truncated_log(double trunc_loglik, double log_f1, Count k,
                                    Count r, Count n_total) {
  check_conversion_counts(k, r, n_total);
  if (!std::isfinite(log_f1) || !(log_f1 < 0.0))
    throw std::domain_error("zi conversion: log f1 must be finite and < 0");
  if (!std::isfinite(trunc_loglik))
    throw std::domain_error("zi conversion: truncated log-likelihood not finite");
  // All three adjustments vanish at k = 0; return the input bit-for-bit.
  if (k == 0) return trunc_loglik;
  const double p = static_cast<double>(k) / static_cast<double>(n_total);
  const double log_1mp = std::log1p(-p);
  const double log_mix = log_add_exp(std::log(p), log_1mp + log_f1);
  return trunc_loglik - static_cast<double>(r - k) * log_f1 +
         static_cast<double>(n_total - r) * log_1mp +
         static_cast<double>(r) * log_mix;
}

double zi_loglik_from_truncated(double trunc_loglik, double f1, Count k, Count r,
                                Count n_total) {
  if (!(f1 > 0.0) || !(f1 < 1.0))
    throw std::domain_error("zi conversion: f1 must lie in (0, 1)");
  return zi_loglik_from_truncated_log(trunc_loglik, std::log(f1), k, r, n_total);
}

}  // namespace citefit
