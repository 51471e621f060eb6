// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "citefit/types.hpp"

namespace citefit {

// Thrown for malformed input files; line is 1-based (0 = whole file).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, long long line);
  long long line() const { return line_; }

 private:
  long long line_;
};

// A corpus of citation counts, stored shifted (raw + 1) so every entry is
// >= 1.  Zero raw citations therefore appear as ones, and the cached
// `ones()` tally is the number of uncited articles.
class CountDataset {
 public:
  // `raw` holds unshifted counts (>= 0); the factory applies the +1 shift.
  static CountDataset from_raw(std::vector<Count> raw,
                               std::vector<std::string> labels = {});
  // `counts` is already shifted; every entry must be >= 1.
  static CountDataset from_shifted(std::vector<Count> counts,
                                   std::vector<std::string> labels = {});

  const std::vector<Count>& counts() const { return counts_; }
  Count n_total() const { return static_cast<Count>(counts_.size()); }
  Count ones() const { return ones_; }
  // Always true for a constructed dataset: there is no unshifted state,
  // which is what prevents a second shift from ever being applied.
  bool shifted() const { return true; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  CountDataset(std::vector<Count> counts, std::vector<std::string> labels);

  std::vector<Count> counts_;        // shifted, each >= 1
  std::vector<std::string> labels_;  // empty, or one journal label per count
  Count ones_;
};

enum class InputFormat { Plain, Csv };

// Plain format: one nonnegative integer per line.
// CSV format: RFC-4180-style with a header row; requires a `citations`
// column and picks up an optional `journal` column as labels.
// Both reject negative counts and report 1-based line numbers on error.
CountDataset load_counts(std::istream& in, InputFormat format);
CountDataset load_counts_file(const std::string& path, InputFormat format);

// Writers used by the synthetic-data and filter commands.  Both emit raw
// (unshifted) counts.
void write_plain(std::ostream& out, const CountDataset& data);
void write_csv(std::ostream& out, const CountDataset& data);

struct JournalRemoval {
  std::string journal;
  Count articles = 0;
  Count uncited = 0;       // raw zeros in the journal
  double cited_pct = 0.0;  // 100 * cited / articles
};

struct FilterResult {
  CountDataset data;
  std::vector<JournalRemoval> removed;  // sorted by journal label
};

// Drops every journal whose cited percentage is below t_percent (articles
// with raw count > 0 count as cited).  Removal is all-or-nothing per
// journal; t_percent = 0 keeps everything.  Requires labels.
FilterResult filter_journals(const CountDataset& data, double t_percent);

struct DatasetSummary {
  Count n_total = 0;
  Count uncited = 0;  // raw zeros
  Count raw_max = 0;
  double raw_mean = 0.0;
  double raw_median = 0.0;
};

DatasetSummary summarize(const CountDataset& data);

struct HistogramBin {
  Count value = 0;  // shifted count
  Count count = 0;  // multiplicity
};

// Sorted ascending by value; bin 0 is the ones bin whenever the dataset
// contains any ones.
std::vector<HistogramBin> make_histogram(const CountDataset& data);

}  // namespace citefit
