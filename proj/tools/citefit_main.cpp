// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0
//
// citefit: fit heavy-tailed citation models, compare them by AIC, export
// CDF curves, generate synthetic corpora, and screen journals.
//
// Exit codes: 0 success, 1 a fit flagged as degenerate (outputs are still
// written), 2 input or usage error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "citefit/dataset.hpp"
#include "citefit/fitting.hpp"
#include "citefit/report.hpp"
#include "citefit/sampling.hpp"
#include "json.hpp"

namespace {

using namespace citefit;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDegenerate = 1;
constexpr int kExitInputError = 2;

InputFormat resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "plain") return InputFormat::Plain;
  if (flag == "csv") return InputFormat::Csv;
  // Unset: decide by extension.
  return std::filesystem::path(path).extension() == ".csv" ? InputFormat::Csv
                                                           : InputFormat::Plain;
}

Family parse_family(const std::string& name) {
  if (name == "dln") return Family::DiscretisedLognormal;
  if (name == "hooked") return Family::HookedPowerLaw;
  throw CLI::ValidationError("--family", "expected 'dln' or 'hooked'");
}

std::string default_label(const std::string& input_path) {
  const std::string stem = std::filesystem::path(input_path).stem().string();
  return stem.empty() ? "data" : stem;
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* model_name_of(const FitResult& fit) {
  const bool zi = fit.n_params == 3;
  if (fit.model.family() == Family::DiscretisedLognormal)
    return zi ? "zidl" : "dln";
  return zi ? "zihp" : "hooked";
}

// Returns the number of non-converged fits and prints their diagnostics.
int report_degenerate(std::initializer_list<const FitResult*> fits) {
  int bad = 0;
  for (const FitResult* fit : fits) {
    if (fit->converged) continue;
    ++bad;
    std::cerr << "warning: " << model_name_of(*fit) << " fit is degenerate: "
              << (fit->diagnostic.empty() ? "did not converge"
                                          : fit->diagnostic)
              << "\n";
  }
  return bad;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  std::string input, format, family_name, out, label;
  bool zero_inflated = false;
  SearchConfig config;
};

int cmd_fit(const FitArgs& args) {
  const CountDataset data =
      load_counts_file(args.input, resolve_format(args.format, args.input));
  const Family family = parse_family(args.family_name);
  const std::string label =
      args.label.empty() ? default_label(args.input) : args.label;

  const FitResult base = fit_base(data, family, args.config);
  std::vector<ReportRow> rows;
  rows.push_back(make_report_row(label, base));

  std::string file_body;
  int bad = 0;
  if (args.zero_inflated) {
    const FitResult zi = fit_zero_inflated(data, family, args.config);
    rows.push_back(make_report_row(label, zi));
    json wrapper;
    wrapper["base"] = json::parse(fit_result_to_json(base));
    wrapper["zero_inflated"] = json::parse(fit_result_to_json(zi));
    file_body = wrapper.dump(2) + "\n";
    bad = report_degenerate({&base, &zi});
  } else {
    file_body = fit_result_to_json(base);
    bad = report_degenerate({&base});
  }

  std::cout << render_report_table(rows);
  if (!args.out.empty()) write_file_atomic(args.out, file_body);
  return bad > 0 ? kExitDegenerate : kExitOk;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string input, format, out, label;
  SearchConfig config;
};

std::string render_comparison_table(const ModelComparison& cmp) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-7s %-26s %6s %7s %12s %12s %s\n", "Model",
                "Params", "p", "K-S", "Log-lik.", "AIC", "Converged");
  out << buf;
  for (std::size_t i = 0; i < cmp.results.size(); ++i) {
    const FitResult& fit = cmp.results[i];
    std::string params;
    if (fit.model.family() == Family::DiscretisedLognormal) {
      params = "mu=" + format_g(fit.model.dln().mu) +
               " sigma=" + format_g(fit.model.dln().sigma);
    } else {
      params = "alpha=" + format_g(fit.model.hooked().alpha) +
               " b=" + format_g(fit.model.hooked().b);
    }
    std::snprintf(buf, sizeof buf, "%-7s %-26s %6.3f %7.3f %12.1f %12.1f %s\n",
                  std::string(to_string(static_cast<ModelId>(i))).c_str(),
                  params.c_str(), fit.model.p, fit.ks, fit.loglik, fit.aic,
                  fit.converged ? "yes" : "no");
    out << buf;
  }
  return out.str();
}

int cmd_compare(const CompareArgs& args) {
  const CountDataset data =
      load_counts_file(args.input, resolve_format(args.format, args.input));
  const ModelComparison cmp = fit_all_models(data, args.config);

  std::cout << render_comparison_table(cmp);
  std::cout << "winner: " << to_string(cmp.winner)
            << (cmp.tie_break ? " (model-order tie-break)" : "") << "\n";
  std::cout << "zidl improvement over dln: "
            << (cmp.zidl_improvement ? "yes" : "no") << "\n";
  std::cout << "zihp improvement over hooked: "
            << (cmp.zihp_improvement ? "yes" : "no") << "\n";

  if (!args.out.empty()) write_file_atomic(args.out, comparison_to_json(cmp));

  const int bad =
      report_degenerate({&cmp.results[0], &cmp.results[1], &cmp.results[2],
                         &cmp.results[3]});
  return bad > 0 ? kExitDegenerate : kExitOk;
}

// ---------------------------------------------------------------------------
// curves

struct CurvesArgs {
  std::string input, format, fit_path, model_name, out;
};

FitResult select_fit(const std::string& text, const std::string& model_name) {
  const json j = json::parse(text);
  if (j.contains("results")) {
    const ModelComparison cmp = comparison_from_json(text);
    const ModelId id = model_name.empty() ? cmp.winner
                                          : model_id_from_string(model_name);
    return cmp.results[static_cast<std::size_t>(id)];
  }
  if (j.contains("base")) {
    const FitResult base = fit_result_from_json(j.at("base").dump());
    const FitResult zi = fit_result_from_json(j.at("zero_inflated").dump());
    if (model_name.empty()) return zi;
    const ModelId id = model_id_from_string(model_name);
    const bool want_zi = id == ModelId::Zidl || id == ModelId::Zihp;
    const FitResult& pick = want_zi ? zi : base;
    if (model_id_from_string(model_name_of(pick)) != id)
      throw std::invalid_argument("fit file does not contain model '" +
                                  model_name + "'");
    return pick;
  }
  const FitResult fit = fit_result_from_json(text);
  if (!model_name.empty() &&
      model_id_from_string(model_name) !=
          model_id_from_string(model_name_of(fit)))
    throw std::invalid_argument("fit file does not contain model '" +
                                model_name + "'");
  return fit;
}

int cmd_curves(const CurvesArgs& args) {
  const CountDataset data =
      load_counts_file(args.input, resolve_format(args.format, args.input));
  const FitResult fit = select_fit(read_file(args.fit_path), args.model_name);

  // A model fitted to differently prepared data (another corpus, or counts
  // shifted twice) will not reproduce the dataset's size and ones tally;
  // refuse rather than emit a silently wrong curve.
  if (fit.n_total != data.n_total() || fit.r != data.ones()) {
    std::ostringstream msg;
    msg << "model/data mismatch: fit was made on n_total=" << fit.n_total
        << ", uncited=" << fit.r << " but the input has n_total="
        << data.n_total() << ", uncited=" << data.ones()
        << " (wrong dataset, or counts shifted twice?)";
    throw std::invalid_argument(msg.str());
  }

  const CdfCurve curve = build_cdf_curve(data, fit.model);
  std::ostringstream body;
  write_curve_csv(body, curve);
  emit(args.out, body.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string family_name, format, out;
  double mu = std::nan(""), sigma = std::nan("");
  double alpha = std::nan(""), b = std::nan("");
  double p = 0.0;
  Count n = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> journals, magazines;
  double magazine_q = 0.95;
};

JournalSpec parse_journal_flag(const std::string& text, bool magazine,
                               double q) {
  const std::size_t eq = text.rfind('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("journal spec '" + text +
                                "' is not label=count");
  JournalSpec spec;
  spec.label = text.substr(0, eq);
  const char* first = text.data() + eq + 1;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, spec.articles);
  if (ec != std::errc{} || ptr != last)
    throw std::invalid_argument("journal spec '" + text +
                                "' has a non-numeric count");
  spec.magazine = magazine;
  spec.q = q;
  return spec;
}

int cmd_simulate(const SimulateArgs& args) {
  const Family family = parse_family(args.family_name);

  SyntheticSpec spec;
  if (family == Family::DiscretisedLognormal) {
    if (std::isnan(args.mu) || std::isnan(args.sigma))
      throw std::invalid_argument("family dln requires --mu and --sigma");
    spec.model.base = DlnParams{args.mu, args.sigma};
  } else {
    if (std::isnan(args.alpha) || std::isnan(args.b))
      throw std::invalid_argument("family hooked requires --alpha and --b");
    spec.model.base = HookedParams{args.alpha, args.b};
  }
  spec.model.p = args.p;
  spec.model.k = 0;
  spec.n = args.n;
  spec.seed = args.seed;
  for (const std::string& text : args.journals)
    spec.journals.push_back(parse_journal_flag(text, false, args.magazine_q));
  for (const std::string& text : args.magazines)
    spec.journals.push_back(parse_journal_flag(text, true, args.magazine_q));
  spec.validate();

  const bool labelled = !spec.journals.empty();
  InputFormat format = labelled ? InputFormat::Csv : InputFormat::Plain;
  if (args.format == "plain") {
    if (labelled)
      throw std::invalid_argument(
          "journal labels need csv output; drop --format plain");
    format = InputFormat::Plain;
  } else if (args.format == "csv") {
    format = InputFormat::Csv;
  }

  const CountDataset data = sample(spec);

  std::ostringstream body;
  if (format == InputFormat::Csv)
    write_csv(body, data);
  else
    write_plain(body, data);
  write_file_atomic(args.out, body.str());

  // Ground-truth sidecar: everything needed to check a recovery.
  json truth;
  const bool zi = spec.model.p > 0.0;
  if (family == Family::DiscretisedLognormal) {
    truth["model"] = zi ? "zidl" : "dln";
    truth["params"] = {{"mu", args.mu}, {"sigma", args.sigma}};
  } else {
    truth["model"] = zi ? "zihp" : "hooked";
    truth["params"] = {{"alpha", args.alpha}, {"b", args.b}};
  }
  truth["p"] = spec.model.p;
  truth["n"] = spec.n;
  truth["seed"] = spec.seed;
  truth["journals"] = json::array();
  for (const JournalSpec& journal : spec.journals) {
    truth["journals"].push_back({{"label", journal.label},
                                 {"articles", journal.articles},
                                 {"magazine", journal.magazine},
                                 {"q", journal.q}});
  }
  write_file_atomic(args.out + ".truth.json", truth.dump(2) + "\n");

  const DatasetSummary summary = summarize(data);
  std::cout << "wrote " << summary.n_total << " articles to " << args.out
            << " (uncited " << summary.uncited << ", max raw count "
            << summary.raw_max << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// filter

struct FilterArgs {
  std::string input, out, report_out;
  double threshold = 0.0;
};

int cmd_filter(const FilterArgs& args) {
  const CountDataset data = load_counts_file(args.input, InputFormat::Csv);
  const FilterResult result = filter_journals(data, args.threshold);

  std::ostringstream body;
  write_csv(body, result.data);
  emit(args.out, body.str());

  char buf[256];
  std::snprintf(buf, sizeof buf, "%-32s %10s %10s %9s\n", "Removed journal",
                "Articles", "Uncited", "Cited%");
  std::cout << buf;
  for (const JournalRemoval& removal : result.removed) {
    std::snprintf(buf, sizeof buf, "%-32s %10lld %10lld %8.1f%%\n",
                  removal.journal.c_str(),
                  static_cast<long long>(removal.articles),
                  static_cast<long long>(removal.uncited), removal.cited_pct);
    std::cout << buf;
  }
  std::cout << "kept " << result.data.n_total() << " of " << data.n_total()
            << " articles (" << result.removed.size()
            << " journals removed)\n";

  if (!args.report_out.empty()) {
    json report = json::array();
    for (const JournalRemoval& removal : result.removed) {
      report.push_back({{"journal", removal.journal},
                        {"articles", removal.articles},
                        {"uncited", removal.uncited},
                        {"cited_pct", removal.cited_pct}});
    }
    write_file_atomic(args.report_out, report.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

void add_search_flags(CLI::App* cmd, SearchConfig* config) {
  cmd->add_option("--stride", config->stride,
                  "k-scan stride (1 = exact exhaustive scan)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--refine,!--no-refine", config->refine,
                "rescan the strided winner's neighbourhood at stride 1");
  cmd->add_flag("--warm-start,!--no-warm-start", config->warm_start,
                "seed each k fit from the previous k's optimum");
  cmd->add_flag("--parallel", config->parallel,
                "run independent fits concurrently (identical results)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "citation-count model fitting: discretised lognormal and hooked "
      "power law, with zero inflation"};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "fit one family to a dataset");
  fit_cmd->add_option("--input", fit_args.input, "dataset file")->required();
  fit_cmd->add_option("--format", fit_args.format, "plain|csv (default: by extension)")
      ->check(CLI::IsMember({"plain", "csv"}));
  fit_cmd->add_option("--family", fit_args.family_name, "dln|hooked")
      ->required()
      ->check(CLI::IsMember({"dln", "hooked"}));
  fit_cmd->add_flag("--zero-inflated", fit_args.zero_inflated,
                    "also fit the zero-inflated variant");
  fit_cmd->add_option("--label", fit_args.label, "row label for the table");
  fit_cmd->add_option("--out", fit_args.out, "write the fit as JSON here");
  add_search_flags(fit_cmd, &fit_args.config);

  CompareArgs compare_args;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "fit all four models and rank by AIC");
  compare_cmd->add_option("--input", compare_args.input, "dataset file")
      ->required();
  compare_cmd
      ->add_option("--format", compare_args.format,
                   "plain|csv (default: by extension)")
      ->check(CLI::IsMember({"plain", "csv"}));
  compare_cmd->add_option("--label", compare_args.label,
                          "row label for the table");
  compare_cmd->add_option("--out", compare_args.out,
                          "write the comparison as JSON here");
  add_search_flags(compare_cmd, &compare_args.config);

  CurvesArgs curves_args;
  CLI::App* curves_cmd = app.add_subcommand(
      "curves", "emit empirical and fitted CDF columns for plotting");
  curves_cmd->add_option("--input", curves_args.input, "dataset file")
      ->required();
  curves_cmd
      ->add_option("--format", curves_args.format,
                   "plain|csv (default: by extension)")
      ->check(CLI::IsMember({"plain", "csv"}));
  curves_cmd->add_option("--fit", curves_args.fit_path,
                         "fit or comparison JSON from fit/compare")
      ->required();
  curves_cmd->add_option(
      "--model", curves_args.model_name,
      "dln|zidl|hooked|zihp (default: comparison winner / ZI row)");
  curves_cmd->add_option("--out", curves_args.out,
                         "CSV path (default: stdout)");

  SimulateArgs simulate_args;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "generate a synthetic corpus");
  simulate_cmd->add_option("--family", simulate_args.family_name, "dln|hooked")
      ->required()
      ->check(CLI::IsMember({"dln", "hooked"}));
  simulate_cmd->add_option("--mu", simulate_args.mu, "lognormal location");
  simulate_cmd->add_option("--sigma", simulate_args.sigma, "lognormal scale");
  simulate_cmd->add_option("--alpha", simulate_args.alpha,
                           "power-law exponent");
  simulate_cmd->add_option("--b", simulate_args.b,
                           "power-law offset (shifted convention)");
  simulate_cmd->add_option("--p", simulate_args.p,
                           "uncitable share, 0 <= p < 1");
  simulate_cmd->add_option("-n,--n", simulate_args.n, "number of articles")
      ->required();
  simulate_cmd->add_option("--seed", simulate_args.seed, "RNG seed");
  simulate_cmd->add_option(
      "--journal", simulate_args.journals,
      "label=count journal block (repeatable; counts must sum to n)");
  simulate_cmd->add_option(
      "--magazine", simulate_args.magazines,
      "label=count block of mostly uncitable articles (repeatable)");
  simulate_cmd->add_option("--magazine-q", simulate_args.magazine_q,
                           "per-article uncitable probability in magazines");
  simulate_cmd
      ->add_option("--format", simulate_args.format,
                   "plain|csv (default: csv when journals are given)")
      ->check(CLI::IsMember({"plain", "csv"}));
  simulate_cmd->add_option("--out", simulate_args.out, "dataset path")
      ->required();

  FilterArgs filter_args;
  CLI::App* filter_cmd = app.add_subcommand(
      "filter", "drop journals whose cited share is below a threshold");
  filter_cmd->add_option("--input", filter_args.input, "csv with a journal column")
      ->required();
  filter_cmd
      ->add_option("--threshold", filter_args.threshold,
                   "cited-percentage threshold T in [0, 100]")
      ->required();
  filter_cmd->add_option("--out", filter_args.out,
                         "filtered csv path (default: stdout)");
  filter_cmd->add_option("--report-out", filter_args.report_out,
                         "write the removal report as JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit_args);
    if (compare_cmd->parsed()) return cmd_compare(compare_args);
    if (curves_cmd->parsed()) return cmd_curves(curves_args);
    if (simulate_cmd->parsed()) return cmd_simulate(simulate_args);
    if (filter_cmd->parsed()) return cmd_filter(filter_args);
  } catch (const ParseError& e) {
    // ParseError messages already carry their line number.
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
