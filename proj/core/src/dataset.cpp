// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#include "citefit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

namespace citefit {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

Count parse_count(const std::string& field, long long line) {
  const std::string text = trim(field);
  if (text.empty()) throw ParseError("empty count field", line);
  Count value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("invalid count '" + text + "'", line);
  if (value < 0)
    throw ParseError("negative count '" + text + "'", line);
  return value;
}

// One RFC-4180 record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv_record(const std::string& line, long long line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      if (!field.empty())
        throw ParseError("unexpected quote inside unquoted field", line_no);
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
    ++i;
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(field);
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Minimal RFC-4180 quoting: only fields holding a separator, quote, or
// line break get wrapped, with inner quotes doubled.
std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += "\"\"";
    else quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace

ParseError::ParseError(const std::string& message, long long line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

CountDataset::CountDataset(std::vector<Count> counts, std::vector<std::string> labels)
    : counts_(std::move(counts)), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != counts_.size())
    throw std::invalid_argument("dataset: label count must match count total");
  ones_ = std::count(counts_.begin(), counts_.end(), Count{1});
}

CountDataset CountDataset::from_raw(std::vector<Count> raw,
                                    std::vector<std::string> labels) {
  for (Count& c : raw) {
    if (c < 0) throw std::invalid_argument("dataset: raw counts must be >= 0");
    c += 1;  // the one and only shift
  }
  return CountDataset(std::move(raw), std::move(labels));
}

CountDataset CountDataset::from_shifted(std::vector<Count> counts,
                                        std::vector<std::string> labels) {
  for (const Count c : counts) {
    if (c < 1)
      throw std::invalid_argument("dataset: shifted counts must be >= 1");
  }
  return CountDataset(std::move(counts), std::move(labels));
}

CountDataset load_counts(std::istream& in, InputFormat format) {
  std::vector<Count> raw;
  std::vector<std::string> labels;
  std::string line;
  long long line_no = 0;

  if (format == InputFormat::Plain) {
    while (std::getline(in, line)) {
      ++line_no;
      raw.push_back(parse_count(strip_cr(line), line_no));
    }
    if (raw.empty()) throw ParseError("empty input", 0);
    return CountDataset::from_raw(std::move(raw));
  }

  // CSV: header row first.
  if (!std::getline(in, line)) throw ParseError("empty input", 0);
  ++line_no;
  const auto header = split_csv_record(strip_cr(line), line_no);
  std::size_t citations_col = header.size();
  std::size_t journal_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = trim(header[i]);
    if (name == "citations") citations_col = i;
    if (name == "journal") journal_col = i;
  }
  if (citations_col == header.size())
    throw ParseError("missing required column 'citations'", 1);
  const bool has_journal = journal_col != header.size();

  while (std::getline(in, line)) {
    ++line_no;
    const std::string record = strip_cr(line);
    if (record.empty()) throw ParseError("blank record", line_no);
    const auto fields = split_csv_record(record, line_no);
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    raw.push_back(parse_count(fields[citations_col], line_no));
    if (has_journal) labels.push_back(trim(fields[journal_col]));
  }
  if (raw.empty()) throw ParseError("no data rows", 0);
  return CountDataset::from_raw(std::move(raw), std::move(labels));
}

CountDataset load_counts_file(const std::string& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return load_counts(in, format);
}

void write_plain(std::ostream& out, const CountDataset& data) {
  for (const Count c : data.counts()) out << (c - 1) << '\n';
}

void write_csv(std::ostream& out, const CountDataset& data) {
  const bool labelled = data.has_labels();
  out << (labelled ? "citations,journal\n" : "citations\n");
  for (std::size_t i = 0; i < data.counts().size(); ++i) {
    out << (data.counts()[i] - 1);
    if (labelled) out << ',' << csv_escape(data.labels()[i]);
    out << '\n';
  }
}

FilterResult filter_journals(const CountDataset& data, double t_percent) {
  if (!data.has_labels())
    throw std::invalid_argument(
        "filter_journals: dataset has no journal labels");
  if (!(t_percent >= 0.0) || !(t_percent <= 100.0))
    throw std::invalid_argument(
        "filter_journals: threshold must be in [0, 100]");

  struct Tally {
    Count articles = 0;
    Count cited = 0;
  };
  std::map<std::string, Tally> tallies;  // ordered for a deterministic report
  for (std::size_t i = 0; i < data.counts().size(); ++i) {
    Tally& t = tallies[data.labels()[i]];
    ++t.articles;
    if (data.counts()[i] > 1) ++t.cited;  // shifted > 1 means raw > 0
  }

  std::vector<JournalRemoval> removed;
  for (const auto& [journal, tally] : tallies) {
    const double cited_pct =
        100.0 * static_cast<double>(tally.cited) / static_cast<double>(tally.articles);
    if (cited_pct < t_percent) {
      removed.push_back({journal, tally.articles, tally.articles - tally.cited,
                         cited_pct});
    }
  }

  std::vector<Count> kept_counts;
  std::vector<std::string> kept_labels;
  for (std::size_t i = 0; i < data.counts().size(); ++i) {
    const std::string& label = data.labels()[i];
    const bool drop = std::any_of(removed.begin(), removed.end(),
                                  [&](const JournalRemoval& jr) {
                                    return jr.journal == label;
                                  });
    if (!drop) {
      kept_counts.push_back(data.counts()[i]);
      kept_labels.push_back(label);
    }
  }
  return FilterResult{CountDataset::from_shifted(std::move(kept_counts),
                                                 std::move(kept_labels)),
                      std::move(removed)};
}

DatasetSummary summarize(const CountDataset& data) {
  if (data.counts().empty())
    throw std::invalid_argument("summarize: dataset is empty");
  DatasetSummary s;
  s.n_total = data.n_total();
  s.uncited = data.ones();
  std::vector<Count> raw(data.counts());
  for (Count& c : raw) c -= 1;
  s.raw_max = *std::max_element(raw.begin(), raw.end());
  s.raw_mean = static_cast<double>(std::accumulate(raw.begin(), raw.end(),
                                                   static_cast<long long>(0))) /
               static_cast<double>(raw.size());
  std::sort(raw.begin(), raw.end());
  const std::size_t half = raw.size() / 2;
  s.raw_median = (raw.size() % 2 == 1)
                     ? static_cast<double>(raw[half])
                     : 0.5 * (static_cast<double>(raw[half - 1]) +
                              static_cast<double>(raw[half]));
  return s;
}

std::vector<HistogramBin> make_histogram(const CountDataset& data) {
  std::map<Count, Count> bins;
  for (const Count c : data.counts()) ++bins[c];
  std::vector<HistogramBin> out;
  out.reserve(bins.size());
  for (const auto& [value, count] : bins) out.push_back({value, count});
  return out;
}

}  // namespace citefit
