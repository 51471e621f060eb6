// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <string_view>

#include "citefit/dataset.hpp"
#include "citefit/zero_inflation.hpp"

namespace citefit {

struct SearchConfig {
  // k-scan stride; 1 scans every k in {0..r} (exact), larger strides are a
  // documented approximation.
  Count stride = 1;
  // After a strided scan, rescan the winner's neighbourhood at stride 1.
  bool refine = true;
  // Seed each k's optimizer from the previous k's optimum.  Serializes the
  // scan; cold starts (warm_start = false) make the k fits independent.
  bool warm_start = true;
  // Run independent work concurrently: the four fits of fit_all_models,
  // and the k-scan when warm_start is off.  Never changes results.
  bool parallel = false;
  double simplex_tol = 1e-8;
  int max_iterations = 2000;
};

struct FitResult {
  ZeroInflatedModel model;
  double loglik = 0.0;
  int n_params = 2;  // 2 for base fits, 3 for zero-inflated fits
  double aic = 0.0;  // always 2 * n_params - 2 * loglik
  double ks = 0.0;
  bool converged = false;
  long long evaluations = 0;  // objective evaluations spent
  Count n_total = 0;
  Count r = 0;  // ones in the fitted dataset
  // Human-readable reason when converged is false; never serialized.
  std::string diagnostic;
};

// Maximum-likelihood fit of a single base family (no inflation).
FitResult fit_base(const CountDataset& data, Family family,
                   const SearchConfig& config = {});

// Zero-inflated fit: for each candidate k in {0..r}, removes k ones,
// refits the base family on the truncated data, converts the truncated
// log-likelihood to the full zero-inflated one at p = k / N, and keeps the
// k that maximizes it (ties within 1e-9 go to the smaller k).
FitResult fit_zero_inflated(const CountDataset& data, Family family,
                            const SearchConfig& config = {});

enum class ModelId { Dln = 0, Zidl = 1, Hooked = 2, Zihp = 3 };

std::string_view to_string(ModelId id);
ModelId model_id_from_string(std::string_view name);

struct ModelComparison {
  // Indexed by ModelId: DLN, ZIDL, hooked, ZIHP.
  std::array<FitResult, 4> results;
  ModelId winner = ModelId::Dln;  // lowest AIC; ties go to the order above
  // A zero-inflated variant is an improvement only when its log-likelihood
  // beats the base family's by more than 1 (one extra parameter).
  bool zidl_improvement = false;
  bool zihp_improvement = false;
  bool tie_break = false;  // true when the winner was decided by order
};

ModelComparison fit_all_models(const CountDataset& data,
                               const SearchConfig& config = {});

}  // namespace citefit
