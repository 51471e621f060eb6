// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#include "citefit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace citefit {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr Count kBlockSize = 8192;
// The prefix table stops growing once it covers all but 1e-9 of the mass
// or hits this many entries; rarer draws fall back to the search.
constexpr Count kMaxTable = 1 << 21;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double cdf_of(const std::variant<DlnEvaluator, HookedEvaluator>& ev, Count n) {
  return std::visit([n](const auto& e) { return e.cdf(n); }, ev);
}

// Smallest n in [lo+1, hi] with cdf(n) >= u, given cdf(lo) < u <= cdf(hi).
Count bisect(const std::variant<DlnEvaluator, HookedEvaluator>& ev, double u,
             Count lo, Count hi) {
  while (hi - lo > 1) {
    const Count mid = lo + (hi - lo) / 2;
    if (cdf_of(ev, mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Count search_draw(const std::variant<DlnEvaluator, HookedEvaluator>& ev,
                  double u, Count start_lo) {
  // Exponential bracketing from start_lo (cdf(start_lo) < u), then bisect.
  Count lo = start_lo;
  Count hi = lo < 1 ? 1 : lo * 2;
  while (hi < kDrawCap && cdf_of(ev, hi) < u) {
    lo = hi;
    hi *= 2;
  }
  if (hi >= kDrawCap) {
    hi = kDrawCap;
    if (cdf_of(ev, hi) < u) return kDrawCap;  // truncated tail draw
  }
  return bisect(ev, u, lo, hi);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::next_unit() {
  // 53-bit mantissa, offset by half a ulp so 0 and 1 are never produced.
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t make_stream_seed(std::uint64_t seed, std::uint64_t block) {
  return mix64(seed + (block + 1) * kGolden);
}

Count inverse_cdf_draw(double u, const DlnParams& params) {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("inverse_cdf_draw: u must be in (0, 1)");
  const std::variant<DlnEvaluator, HookedEvaluator> ev{DlnEvaluator(params)};
  if (cdf_of(ev, 1) >= u) return 1;
  return search_draw(ev, u, 1);
}

Count inverse_cdf_draw(double u, const HookedParams& params) {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("inverse_cdf_draw: u must be in (0, 1)");
  const std::variant<DlnEvaluator, HookedEvaluator> ev{HookedEvaluator(params)};
  if (cdf_of(ev, 1) >= u) return 1;
  return search_draw(ev, u, 1);
}

DiscreteCdfSampler::DiscreteCdfSampler(
    const std::variant<DlnParams, HookedParams>& base)
    : eval_(std::holds_alternative<DlnParams>(base)
                ? std::variant<DlnEvaluator, HookedEvaluator>(
                      DlnEvaluator(std::get<DlnParams>(base)))
                : std::variant<DlnEvaluator, HookedEvaluator>(
                      HookedEvaluator(std::get<HookedParams>(base)))) {
  Count size = 64;
  while (size < kMaxTable && cdf_of(eval_, size) < 1.0 - 1e-9) size *= 2;
  size = std::min(size, kMaxTable);
  table_.resize(static_cast<std::size_t>(size));
  for (Count n = 1; n <= size; ++n)
    table_[static_cast<std::size_t>(n - 1)] = cdf_of(eval_, n);
}

Count DiscreteCdfSampler::draw(double u) const {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("DiscreteCdfSampler: u must be in (0, 1)");
  if (u <= table_.back()) {
    const auto it = std::lower_bound(table_.begin(), table_.end(), u);
    return static_cast<Count>(it - table_.begin()) + 1;
  }
  return search_draw(eval_, u, static_cast<Count>(table_.size()));
}

double DiscreteCdfSampler::truncation_error() const {
  return std::visit([](const auto& e) { return e.tail_bound(kDrawCap); }, eval_);
}

void SyntheticSpec::validate() const {
  model.validate();
  if (n < 1) throw std::invalid_argument("synthetic spec: n must be >= 1");
  if (!journals.empty()) {
    Count total = 0;
    for (const JournalSpec& j : journals) {
      if (j.label.empty())
        throw std::invalid_argument("synthetic spec: journal label empty");
      if (j.articles < 1)
        throw std::invalid_argument("synthetic spec: journal needs articles >= 1");
      if (j.magazine && (!(j.q >= 0.9) || !(j.q <= 1.0)))
        throw std::invalid_argument(
            "synthetic spec: magazine q must lie in [0.9, 1]");
      total += j.articles;
    }
    if (total != n)
      throw std::invalid_argument(
          "synthetic spec: journal articles must sum to n");
  }
}

CountDataset sample(const SyntheticSpec& spec) {
  spec.validate();
  const DiscreteCdfSampler sampler(spec.model.base);

  std::vector<Count> counts;
  counts.reserve(static_cast<std::size_t>(spec.n));
  std::vector<std::string> labels;
  const bool labelled = !spec.journals.empty();
  if (labelled) labels.reserve(static_cast<std::size_t>(spec.n));

  std::size_t journal_idx = 0;
  Count journal_left = labelled ? spec.journals[0].articles : 0;

  SplitMix64 rng(make_stream_seed(spec.seed, 0));
  for (Count i = 0; i < spec.n; ++i) {
    if (i % kBlockSize == 0)
      rng = SplitMix64(make_stream_seed(
          spec.seed, static_cast<std::uint64_t>(i / kBlockSize)));

    double p_one = spec.model.p;
    if (labelled) {
      while (journal_left == 0) {
        ++journal_idx;
        journal_left = spec.journals[journal_idx].articles;
      }
      const JournalSpec& j = spec.journals[journal_idx];
      if (j.magazine) p_one = j.q;
      labels.push_back(j.label);
      --journal_left;
    }

    // Fixed two-uniform layout per article: inflation test, then value.
    const double u_inflate = rng.next_unit();
    const double u_value = rng.next_unit();
    counts.push_back(u_inflate < p_one ? 1 : sampler.draw(u_value));
  }

  return labelled
             ? CountDataset::from_shifted(std::move(counts), std::move(labels))
             : CountDataset::from_shifted(std::move(counts));
}

}  // namespace citefit
