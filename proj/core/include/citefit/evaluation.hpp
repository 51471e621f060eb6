// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "citefit/dataset.hpp"
#include "citefit/zero_inflation.hpp"

namespace citefit {

// Sum of zi_log_pmf over the dataset, accumulated over the value histogram
// in ascending value order (deterministic).
double log_likelihood(const CountDataset& data, const ZeroInflatedModel& model);

// aic = 2 * n_params - 2 * loglik.  Base fits carry 2 parameters,
// zero-inflated fits 3.
double aic(double loglik, int n_params);

// Kolmogorov-Smirnov distance between the empirical CDF and the model CDF,
// taken over every integer n in [1, max(data)] (not just observed values).
double ks_statistic(const CountDataset& data, const ZeroInflatedModel& model);

}  // namespace citefit
