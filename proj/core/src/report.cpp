// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#include "citefit/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "citefit/evaluation.hpp"
#include "json.hpp"

namespace citefit {

namespace {

using nlohmann::json;

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

ModelId model_id_of(const FitResult& fit) {
  const bool inflated = fit.n_params == 3;
  if (fit.model.family() == Family::DiscretisedLognormal)
    return inflated ? ModelId::Zidl : ModelId::Dln;
  return inflated ? ModelId::Zihp : ModelId::Hooked;
}

json fit_result_to_json_value(const FitResult& fit) {
  json params;
  if (fit.model.family() == Family::DiscretisedLognormal) {
    params["mu"] = fit.model.dln().mu;
    params["sigma"] = fit.model.dln().sigma;
  } else {
    params["alpha"] = fit.model.hooked().alpha;
    params["b"] = fit.model.hooked().b;
  }
  return json{{"model", std::string(to_string(model_id_of(fit)))},
              {"params", params},
              {"p", fit.model.p},
              {"k", fit.model.k},
              {"n_total", fit.n_total},
              {"r", fit.r},
              {"loglik", fit.loglik},
              {"aic", fit.aic},
              {"ks", fit.ks},
              {"converged", fit.converged},
              {"evaluations", fit.evaluations}};
}

FitResult fit_result_from_json_value(const json& j) {
  FitResult fit;
  const ModelId id = model_id_from_string(j.at("model").get<std::string>());
  const json& params = j.at("params");
  const Count k = j.at("k").get<Count>();
  const double p = j.at("p").get<double>();
  if (id == ModelId::Dln || id == ModelId::Zidl) {
    fit.model.base = DlnParams{params.at("mu").get<double>(),
                               params.at("sigma").get<double>()};
  } else {
    fit.model.base = HookedParams{params.at("alpha").get<double>(),
                                  params.at("b").get<double>()};
  }
  fit.model.p = p;
  fit.model.k = k;
  fit.n_params = (id == ModelId::Zidl || id == ModelId::Zihp) ? 3 : 2;
  fit.n_total = j.at("n_total").get<Count>();
  fit.r = j.at("r").get<Count>();
  fit.loglik = j.at("loglik").get<double>();
  fit.aic = j.at("aic").get<double>();
  fit.ks = j.at("ks").get<double>();
  fit.converged = j.at("converged").get<bool>();
  fit.evaluations = j.at("evaluations").get<long long>();
  return fit;
}

}  // namespace

ReportRow make_report_row(std::string label, const FitResult& fit) {
  ReportRow row;
  row.label = std::move(label);
  row.articles = fit.n_total;
  row.uncitable_pct = static_cast<int>(
      std::llround(100.0 * static_cast<double>(fit.model.k) /
                   static_cast<double>(fit.n_total)));
  row.uncitable_of_uncited_pct =
      fit.r == 0 ? 0
                 : static_cast<int>(std::llround(
                       100.0 * static_cast<double>(fit.model.k) /
                       static_cast<double>(fit.r)));
  row.uncited = fit.r - fit.model.k;
  row.family = fit.model.family();
  if (row.family == Family::DiscretisedLognormal) {
    row.param1 = fit.model.dln().mu;
    row.param2 = fit.model.dln().sigma;
    row.param2_unshifted = 0.0;
  } else {
    row.param1 = fit.model.hooked().alpha;
    row.param2 = fit.model.hooked().b;
    row.param2_unshifted = fit.model.hooked().b + 1.0;
  }
  row.ks = fit.ks;
  row.loglik = fit.loglik;
  row.zero_inflated = fit.n_params == 3;
  row.converged = fit.converged;
  return row;
}

std::string render_report_table(std::span<const ReportRow> rows) {
  std::ostringstream out;
  if (rows.empty()) return {};
  const bool hooked = rows.front().family == Family::HookedPowerLaw;

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"Subject",   "Model",  "Articles",
                                     "Uncitable", "Of-unc", "Uncited"};
  if (hooked) {
    header.insert(header.end(), {"alpha", "B", "B+1"});
  } else {
    header.insert(header.end(), {"mu", "sigma"});
  }
  header.insert(header.end(), {"K-S", "Log-lik."});
  cells.push_back(header);

  for (const ReportRow& row : rows) {
    std::vector<std::string> line;
    line.push_back(row.label);
    std::string model =
        row.family == Family::HookedPowerLaw
            ? (row.zero_inflated ? "zihp" : "hooked")
            : (row.zero_inflated ? "zidl" : "dln");
    if (!row.converged) model += " (!)";
    line.push_back(model);
    line.push_back(std::to_string(row.articles));
    line.push_back(std::to_string(row.uncitable_pct) + "%");
    line.push_back(std::to_string(row.uncitable_of_uncited_pct) + "%");
    line.push_back(std::to_string(row.uncited));
    if (hooked) {
      line.push_back(format_double(row.param1, "%.2f"));
      line.push_back(format_double(row.param2, "%.4g"));
      line.push_back(format_double(row.param2_unshifted, "%.4g"));
    } else {
      line.push_back(format_double(row.param1, "%.2f"));
      line.push_back(format_double(row.param2, "%.2f"));
    }
    line.push_back(format_double(row.ks, "%.3f"));
    line.push_back(format_double(row.loglik, "%.1f"));
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c)
      widths[c] = std::max(widths[c], line[c].size());

  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << "  ";
      out << line[c];
      if (c + 1 < line.size())
        out << std::string(widths[c] - line[c].size(), ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string fit_result_to_json(const FitResult& fit, int indent) {
  return fit_result_to_json_value(fit).dump(indent) + "\n";
}

FitResult fit_result_from_json(const std::string& text) {
  try {
    return fit_result_from_json_value(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("fit result JSON: ") + e.what());
  }
}

std::string comparison_to_json(const ModelComparison& comparison, int indent) {
  json results;
  for (std::size_t i = 0; i < comparison.results.size(); ++i) {
    results[std::string(to_string(static_cast<ModelId>(i)))] =
        fit_result_to_json_value(comparison.results[i]);
  }
  const json j{{"results", results},
               {"winner", std::string(to_string(comparison.winner))},
               {"zidl_improvement", comparison.zidl_improvement},
               {"zihp_improvement", comparison.zihp_improvement},
               {"tie_break", comparison.tie_break}};
  return j.dump(indent) + "\n";
}

ModelComparison comparison_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ModelComparison cmp;
    const json& results = j.at("results");
    for (std::size_t i = 0; i < cmp.results.size(); ++i) {
      cmp.results[i] = fit_result_from_json_value(
          results.at(std::string(to_string(static_cast<ModelId>(i)))));
    }
    cmp.winner = model_id_from_string(j.at("winner").get<std::string>());
    cmp.zidl_improvement = j.at("zidl_improvement").get<bool>();
    cmp.zihp_improvement = j.at("zihp_improvement").get<bool>();
    cmp.tie_break = j.at("tie_break").get<bool>();
    return cmp;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("comparison JSON: ") + e.what());
  }
}

CdfCurve build_cdf_curve(const CountDataset& data,
                         const ZeroInflatedModel& model) {
  if (data.counts().empty())
    throw std::invalid_argument("build_cdf_curve: dataset is empty");
  const ZiEvaluator ev(model);
  const auto hist = make_histogram(data);
  const double n_total = static_cast<double>(data.n_total());
  const Count max_value = hist.back().value;

  CdfCurve curve;
  curve.n.reserve(static_cast<std::size_t>(max_value));
  curve.empirical.reserve(static_cast<std::size_t>(max_value));
  curve.fitted.reserve(static_cast<std::size_t>(max_value));

  Count cumulative = 0;
  std::size_t bin = 0;
  for (Count n = 1; n <= max_value; ++n) {
    if (bin < hist.size() && hist[bin].value == n) {
      cumulative += hist[bin].count;
      ++bin;
    }
    curve.n.push_back(n);
    curve.empirical.push_back(static_cast<double>(cumulative) / n_total);
    curve.fitted.push_back(ev.cdf(n));
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const CdfCurve& curve) {
  out << "n,empirical_cdf,fitted_cdf\n";
  for (std::size_t i = 0; i < curve.n.size(); ++i) {
    out << curve.n[i] << ',' << format_double(curve.empirical[i], "%.17g")
        << ',' << format_double(curve.fitted[i], "%.17g") << '\n';
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename to '" + path + "' failed");
}

}  // namespace citefit
