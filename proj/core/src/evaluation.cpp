// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#include "citefit/evaluation.hpp"

#include <cmath>
#include <stdexcept>

namespace citefit {

double log_likelihood(const CountDataset& data, const ZeroInflatedModel& model) {
  if (data.counts().empty())
    throw std::invalid_argument("log_likelihood: dataset is empty");
  const ZiEvaluator ev(model);
  double ll = 0.0;
  for (const HistogramBin& bin : make_histogram(data)) {
    ll += static_cast<double>(bin.count) * ev.log_pmf(bin.value);
  }
  return ll;
}

double aic(double loglik, int n_params) {
  if (n_params != 2 && n_params != 3)
    throw std::invalid_argument("aic: models here have 2 or 3 parameters");
  return 2.0 * n_params - 2.0 * loglik;
}

double ks_statistic(const CountDataset& data, const ZeroInflatedModel& model) {
  if (data.counts().empty())
    throw std::invalid_argument("ks_statistic: dataset is empty");
  const ZiEvaluator ev(model);
  const auto hist = make_histogram(data);
  const double n_total = static_cast<double>(data.n_total());
  const Count max_value = hist.back().value;

  double best = 0.0;
  Count cumulative = 0;
  std::size_t bin = 0;
  for (Count n = 1; n <= max_value; ++n) {
    if (bin < hist.size() && hist[bin].value == n) {
      cumulative += hist[bin].count;
      ++bin;
    }
    const double empirical = static_cast<double>(cumulative) / n_total;
    const double d = std::fabs(empirical - ev.cdf(n));
    if (d > best) best = d;
  }
  return best;
}

}  // namespace citefit
