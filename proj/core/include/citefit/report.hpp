// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "citefit/fitting.hpp"

namespace citefit {

// One table line in the style of the published journal-impact tables.
struct ReportRow {
  std::string label;
  Count articles = 0;
  // llround(100 k / N): percent of articles deemed uncitable, rounded
  // half away from zero.
  int uncitable_pct = 0;
  // llround(100 k / r): the share of the uncited that the model calls
  // uncitable; 0 when the corpus has no uncited articles.
  int uncitable_of_uncited_pct = 0;
  Count uncited = 0;  // raw zeros left to the base component: r - k
  Family family = Family::DiscretisedLognormal;
  double param1 = 0.0;            // mu or alpha
  double param2 = 0.0;            // sigma or b (shifted convention)
  double param2_unshifted = 0.0;  // b + 1; unused for the lognormal
  double ks = 0.0;                // rendered with 3 decimals
  double loglik = 0.0;            // rendered with 1 decimal
  bool zero_inflated = false;
  bool converged = true;
};

ReportRow make_report_row(std::string label, const FitResult& fit);
std::string render_report_table(std::span<const ReportRow> rows);

// JSON result schema (stable):
//   { model, params: {...}, p, k, n_total, r, loglik, aic, ks,
//     converged, evaluations }
// model is one of "dln", "zidl", "hooked", "zihp"; params holds
// {mu, sigma} or {alpha, b} with b in the shifted convention.
std::string fit_result_to_json(const FitResult& fit, int indent = 2);
FitResult fit_result_from_json(const std::string& text);

// { results: {dln, zidl, hooked, zihp}, winner, zidl_improvement,
//   zihp_improvement, tie_break }
std::string comparison_to_json(const ModelComparison& comparison, int indent = 2);
ModelComparison comparison_from_json(const std::string& text);

struct CdfCurve {
  std::vector<Count> n;  // 1..max(data)
  std::vector<double> empirical;
  std::vector<double> fitted;
};

// Shares its CDF loop with ks_statistic: the largest |empirical - fitted|
// across rows is exactly the K-S statistic.
CdfCurve build_cdf_curve(const CountDataset& data, const ZeroInflatedModel& model);
void write_curve_csv(std::ostream& out, const CdfCurve& curve);

// Writes via a temp file in the same directory plus rename, so readers
// never observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace citefit
