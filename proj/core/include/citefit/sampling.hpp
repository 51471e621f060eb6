// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citefit/dataset.hpp"
#include "citefit/zero_inflation.hpp"

namespace citefit {

// SplitMix64: portable 64-bit generator with a one-word state, identical
// output on every platform.  Streams for independent draw blocks are made
// by hashing (seed, block) through the same finalizer, so block b can be
// generated without generating blocks 0..b-1.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform double in the open interval (0, 1), 53-bit resolution.
  double next_unit();

 private:
  std::uint64_t state_;
};

std::uint64_t make_stream_seed(std::uint64_t seed, std::uint64_t block);

// Largest value the inverse-CDF search will return.  Draws whose target
// quantile lies beyond the cap (probability at most the model's tail bound
// at the cap) are truncated to it.
inline constexpr Count kDrawCap = 1'000'000'000;

// Smallest n with cdf(n) >= u, for u in (0, 1): exponential bracketing
// followed by binary search, capped at kDrawCap.
Count inverse_cdf_draw(double u, const DlnParams& params);
Count inverse_cdf_draw(double u, const HookedParams& params);

// Inverse-CDF sampler with a cached CDF prefix table.  draw(u) returns
// exactly what inverse_cdf_draw would: the table entries are the same
// closed-form CDF values the search would evaluate.
class DiscreteCdfSampler {
 public:
  explicit DiscreteCdfSampler(const std::variant<DlnParams, HookedParams>& base);

  Count draw(double u) const;
  // Model mass that the kDrawCap truncation can misplace.
  double truncation_error() const;

 private:
  std::variant<DlnEvaluator, HookedEvaluator> eval_;
  std::vector<double> table_;  // table_[i] = cdf(i + 1)
};

struct JournalSpec {
  std::string label;
  Count articles = 0;
  // Magazine-like journals publish almost exclusively uncitable material:
  // each article is uncited with probability q, q in [0.9, 1].
  bool magazine = false;
  double q = 0.95;
};

struct SyntheticSpec {
  ZeroInflatedModel model;
  Count n = 0;
  std::uint64_t seed = 0;
  // Optional journal structure; when present the article counts must sum
  // to n and every draw carries its journal label.
  std::vector<JournalSpec> journals;

  void validate() const;
};

// Deterministic for a given spec: draws are laid out in fixed-size blocks
// with one RNG stream per block, so the result never depends on how the
// blocks are scheduled.  Each article consumes exactly two uniforms: the
// inflation test first, then the value draw.
CountDataset sample(const SyntheticSpec& spec);

}  // namespace citefit
