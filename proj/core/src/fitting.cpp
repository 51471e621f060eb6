// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#include "citefit/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "citefit/evaluation.hpp"
#include "citefit/optim.hpp"

namespace citefit {

namespace {

constexpr double kLnHalf = -0.69314718055994530942;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Histogram view of the dataset with the logarithms of the cell edges
// precomputed; the k-scan only ever changes the multiplicity of value 1.
struct HistData {
  std::vector<Count> values;
  std::vector<double> counts;
  std::vector<double> log_lo;  // ln(value - 1/2)
  std::vector<double> log_hi;  // ln(value + 1/2)
  double n_total = 0.0;
  Count n_total_i = 0;
  Count ones = 0;
  bool has_ones = false;
};

HistData build_hist(const CountDataset& data) {
  HistData h;
  const auto bins = make_histogram(data);
  h.values.reserve(bins.size());
  h.counts.reserve(bins.size());
  h.log_lo.reserve(bins.size());
  h.log_hi.reserve(bins.size());
  for (const HistogramBin& bin : bins) {
    const double v = static_cast<double>(bin.value);
    h.values.push_back(bin.value);
    h.counts.push_back(static_cast<double>(bin.count));
    h.log_lo.push_back(std::log(v - 0.5));
    h.log_hi.push_back(std::log(v + 0.5));
  }
  h.n_total_i = data.n_total();
  h.n_total = static_cast<double>(h.n_total_i);
  h.ones = data.ones();
  h.has_ones = !bins.empty() && bins.front().value == 1;
  return h;
}

// Negative log-likelihood of the k-truncated dataset (k ones removed).
double dln_trunc_nll(const HistData& h, double mu, double sigma, Count k) {
  const double log_norm = log_normal_sf((kLnHalf - mu) / sigma);
  double ll = 0.0;
  std::size_t i = 0;
  if (h.has_ones) {
    const double c = h.counts[0] - static_cast<double>(k);
    if (c > 0.0)
      ll += c * log_normal_interval((h.log_lo[0] - mu) / sigma,
                                    (h.log_hi[0] - mu) / sigma);
    i = 1;
  }
  for (; i < h.values.size(); ++i) {
    ll += h.counts[i] * log_normal_interval((h.log_lo[i] - mu) / sigma,
                                            (h.log_hi[i] - mu) / sigma);
  }
  ll -= (h.n_total - static_cast<double>(k)) * log_norm;
  return -ll;
}

double hooked_trunc_nll(const HistData& h, double alpha, double b, Count k) {
  const double log_norm = -log_hurwitz_zeta(alpha, b + 1.0);
  double weighted_log = 0.0;
  std::size_t i = 0;
  if (h.has_ones) {
    const double c = h.counts[0] - static_cast<double>(k);
    if (c > 0.0) weighted_log += c * std::log(b + 1.0);
    i = 1;
  }
  for (; i < h.values.size(); ++i) {
    weighted_log +=
        h.counts[i] * std::log(b + static_cast<double>(h.values[i]));
  }
  const double ll =
      (h.n_total - static_cast<double>(k)) * log_norm - alpha * weighted_log;
  return -ll;
}

std::array<AxisTransform, 2> transforms_for(Family family) {
  using namespace param_bounds;
  if (family == Family::DiscretisedLognormal) {
    return {AxisTransform(mu_min, mu_max, false),
            AxisTransform(sigma_min, sigma_max, true)};
  }
  // alpha runs on ln(alpha - 1) so both the near-1 and the steep end get
  // sensible resolution.
  return {AxisTransform(alpha_min, alpha_max, true, 1.0),
          AxisTransform(b_min, b_max, true)};
}

struct BaseFit {
  std::array<double, 2> natural{};  // {mu, sigma} or {alpha, b}
  double trunc_loglik = kNan;
  bool converged = false;
  long long evaluations = 0;
  std::string diagnostic;
};

// Moment start for the lognormal on the truncated histogram.
std::array<double, 2> dln_cold_start(const HistData& h, Count k) {
  double weight = 0.0, mean = 0.0;
  std::size_t i = h.has_ones ? 1 : 0;
  const double ones_kept = h.has_ones ? h.counts[0] - static_cast<double>(k) : 0.0;
  // ln 1 = 0, so the ones bin only contributes weight.
  weight += std::max(0.0, ones_kept);
  for (; i < h.values.size(); ++i) {
    weight += h.counts[i];
    mean += h.counts[i] * std::log(static_cast<double>(h.values[i]));
  }
  mean /= weight;
  double var = std::max(0.0, ones_kept) * mean * mean;
  for (i = h.has_ones ? 1 : 0; i < h.values.size(); ++i) {
    const double d = std::log(static_cast<double>(h.values[i])) - mean;
    var += h.counts[i] * d * d;
  }
  var /= weight;
  const double mu0 = std::clamp(mean, param_bounds::mu_min + 1.0,
                                param_bounds::mu_max - 1.0);
  const double sigma0 =
      std::clamp(std::sqrt(var), 1e-2, param_bounds::sigma_max * 0.5);
  return {mu0, sigma0};
}

BaseFit fit_family(const HistData& h, Count k, Family family,
                   const SearchConfig& config,
                   const std::optional<std::array<double, 2>>& warm,
                   double warm_step = 0.005) {
  const auto transforms = transforms_for(family);
  auto nll = [&](std::span<const double> y) {
    const double a = transforms[0].to_natural(y[0]);
    const double b = transforms[1].to_natural(y[1]);
    return family == Family::DiscretisedLognormal ? dln_trunc_nll(h, a, b, k)
                                                  : hooked_trunc_nll(h, a, b, k);
  };

  BaseFit fit;
  std::array<double, 2> start{};
  if (warm) {
    start = *warm;
  } else if (family == Family::DiscretisedLognormal) {
    start = dln_cold_start(h, k);
  } else {
    // Coarse 8x8 log-spaced sweep over (alpha, b); best cell seeds the
    // simplex.
    double best_nll = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i) {
      const double alpha =
          1.0 + std::exp(std::log(0.05) +
                         (std::log(30.0) - std::log(0.05)) * (i / 7.0));
      for (int j = 0; j < 8; ++j) {
        const double b = std::exp(std::log(0.1) +
                                  (std::log(1e4) - std::log(0.1)) * (j / 7.0));
        const double v = hooked_trunc_nll(h, alpha, b, k);
        ++fit.evaluations;
        if (v < best_nll) {
          best_nll = v;
          start = {alpha, b};
        }
      }
    }
  }

  const std::array<double, 2> y0 = {transforms[0].to_internal(start[0]),
                                    transforms[1].to_internal(start[1])};
  const double step = warm ? warm_step : 0.6;
  const std::array<double, 2> steps = {step, step};

  NelderMeadOptions options;
  options.f_tol = config.simplex_tol;
  options.max_iterations = config.max_iterations;
  const NelderMeadResult nm = nelder_mead_minimize(nll, y0, steps, options);

  fit.evaluations += nm.evaluations;
  fit.natural = {transforms[0].to_natural(nm.x[0]),
                 transforms[1].to_natural(nm.x[1])};
  fit.trunc_loglik = -nm.fmin;

  bool at_bound = false;
  for (std::size_t d = 0; d < 2; ++d) {
    const double frac = transforms[d].box_fraction(nm.x[d]);
    if (frac < 1e-7 || frac > 1.0 - 1e-7) at_bound = true;
  }
  fit.converged = nm.converged && !at_bound;
  if (!nm.converged) {
    fit.diagnostic = "optimizer hit the iteration cap";
  } else if (at_bound) {
    fit.diagnostic = "parameter pinned at a search bound (degenerate data?)";
  }

  // A single distinct value cannot identify two parameters: the dispersion
  // MLE sits on a boundary plateau, and the simplex may stop anywhere on
  // it.  Detect the condition from the data, not the optimizer state.
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    const double c = (i == 0 && h.has_ones)
                         ? h.counts[0] - static_cast<double>(k)
                         : h.counts[i];
    if (c > 0.0) ++distinct;
  }
  if (distinct <= 1) {
    fit.converged = false;
    fit.diagnostic =
        "all remaining articles share one citation count; the dispersion "
        "parameter is unidentified";
  }
  return fit;
}

ZeroInflatedModel model_from_natural(Family family,
                                     const std::array<double, 2>& natural,
                                     Count k, Count n_total) {
  if (family == Family::DiscretisedLognormal) {
    const DlnParams params{natural[0], natural[1]};
    return k == 0 ? base_model(params) : inflated_model(params, k, n_total);
  }
  const HookedParams params{natural[0], natural[1]};
  return k == 0 ? base_model(params) : inflated_model(params, k, n_total);
}

double base_log_pmf1(Family family, const std::array<double, 2>& natural) {
  if (family == Family::DiscretisedLognormal)
    return dln_log_pmf(1, DlnParams{natural[0], natural[1]});
  return hooked_log_pmf(1, HookedParams{natural[0], natural[1]});
}

struct ScanPoint {
  Count k = 0;
  double full_loglik = kNan;
  BaseFit fit;
};

ScanPoint evaluate_k(const HistData& h, Count k, Family family,
                     const SearchConfig& config,
                     const std::optional<std::array<double, 2>>& warm,
                     double warm_step = 0.005) {
  ScanPoint point;
  point.k = k;
  point.fit = fit_family(h, k, family, config, warm, warm_step);
  // f1 underflows to exactly 1 only when the fit collapses onto the ones
  // bin; nudge it back inside (0, 1) so the conversion stays defined.
  const double log_f1 =
      std::min(base_log_pmf1(family, point.fit.natural), -1e-300);
  point.full_loglik = zi_loglik_from_truncated_log(
      point.fit.trunc_loglik, log_f1, k, h.ones, h.n_total_i);
  return point;
}

// Smallest k within 1e-9 of the maximum converted log-likelihood.
std::size_t select_best(const std::vector<ScanPoint>& points) {
  double max_ll = -std::numeric_limits<double>::infinity();
  for (const ScanPoint& pt : points) {
    if (std::isfinite(pt.full_loglik) && pt.full_loglik > max_ll)
      max_ll = pt.full_loglik;
  }
  std::size_t best = 0;
  Count best_k = std::numeric_limits<Count>::max();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::isfinite(points[i].full_loglik) &&
        points[i].full_loglik >= max_ll - 1e-9 && points[i].k < best_k) {
      best = i;
      best_k = points[i].k;
    }
  }
  return best;
}

std::vector<ScanPoint> run_scan(const HistData& h, const std::vector<Count>& ks,
                                Family family, const SearchConfig& config,
                                std::optional<std::array<double, 2>> warm_seed) {
  std::vector<ScanPoint> points;
  points.reserve(ks.size());

  if (config.parallel && !config.warm_start && ks.size() > 1) {
    // Cold starts are independent, so the grid can be sliced across
    // threads; results are identical to the serial cold scan.
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunks = std::min<std::size_t>(hw, ks.size());
    std::vector<std::future<std::vector<ScanPoint>>> futures;
    const std::size_t per = (ks.size() + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t lo = c * per;
      const std::size_t hi = std::min(ks.size(), lo + per);
      if (lo >= hi) break;
      futures.push_back(std::async(std::launch::async, [&, lo, hi] {
        std::vector<ScanPoint> part;
        part.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i)
          part.push_back(evaluate_k(h, ks[i], family, config, std::nullopt));
        return part;
      }));
    }
    for (auto& f : futures) {
      auto part = f.get();
      points.insert(points.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
    }
    return points;
  }

  std::optional<std::array<double, 2>> warm =
      config.warm_start ? warm_seed : std::nullopt;
  for (const Count k : ks) {
    points.push_back(evaluate_k(h, k, family, config, warm));
    if (config.warm_start) warm = points.back().fit.natural;
  }
  return points;
}

FitResult finish_result(const CountDataset& data, const HistData& h,
                        Family family, const ScanPoint& best,
                        long long evaluations, int n_params) {
  FitResult fr;
  fr.model = model_from_natural(family, best.fit.natural, best.k, h.n_total_i);
  fr.loglik = best.full_loglik;
  fr.n_params = n_params;
  fr.aic = aic(fr.loglik, n_params);
  fr.ks = ks_statistic(data, fr.model);
  fr.converged = best.fit.converged;
  fr.evaluations = evaluations;
  fr.n_total = h.n_total_i;
  fr.r = h.ones;
  fr.diagnostic = best.fit.diagnostic;
  return fr;
}

void check_input(const CountDataset& data, const SearchConfig& config) {
  if (data.counts().empty())
    throw std::invalid_argument("fit: dataset is empty");
  if (config.stride < 1)
    throw std::invalid_argument("fit: stride must be >= 1");
  if (config.max_iterations < 1)
    throw std::invalid_argument("fit: max_iterations must be >= 1");
  if (!(config.simplex_tol > 0.0))
    throw std::invalid_argument("fit: simplex_tol must be > 0");
}

}  // namespace

FitResult fit_base(const CountDataset& data, Family family,
                   const SearchConfig& config) {
  check_input(data, config);
  const HistData h = build_hist(data);
  ScanPoint point = evaluate_k(h, 0, family, config, std::nullopt);
  return finish_result(data, h, family, point, point.fit.evaluations, 2);
}

FitResult fit_zero_inflated(const CountDataset& data, Family family,
                            const SearchConfig& config) {
  check_input(data, config);
  const HistData h = build_hist(data);
  const Count k_max = std::min(h.ones, h.n_total_i - 1);

  std::vector<Count> ks;
  for (Count k = 0; k <= k_max; k += config.stride) ks.push_back(k);
  if (ks.back() != k_max) ks.push_back(k_max);

  std::vector<ScanPoint> points = run_scan(h, ks, family, config, std::nullopt);

  if (config.stride > 1 && config.refine) {
    const ScanPoint& coarse = points[select_best(points)];
    std::vector<Count> fill;
    const Count lo = std::max<Count>(0, coarse.k - config.stride + 1);
    const Count hi = std::min(k_max, coarse.k + config.stride - 1);
    for (Count k = lo; k <= hi; ++k) {
      const bool seen = std::any_of(points.begin(), points.end(),
                                    [k](const ScanPoint& p) { return p.k == k; });
      if (!seen) fill.push_back(k);
    }
    auto extra = run_scan(h, fill, family, config, coarse.fit.natural);
    points.insert(points.end(), std::make_move_iterator(extra.begin()),
                  std::make_move_iterator(extra.end()));
  }

  long long evaluations = 0;
  for (const ScanPoint& pt : points) evaluations += pt.fit.evaluations;

  std::size_t best_i = select_best(points);
  if (config.warm_start) {
    // The warm chain's tiny simplex can stall a hair short of the per-k
    // optimum; one fresh restart at the winning k closes the gap.
    ScanPoint polished = evaluate_k(h, points[best_i].k, family, config,
                                    points[best_i].fit.natural, 0.1);
    evaluations += polished.fit.evaluations;
    if (polished.full_loglik > points[best_i].full_loglik)
      points[best_i] = std::move(polished);
  }

  const ScanPoint& best = points[best_i];
  return finish_result(data, h, family, best, evaluations, 3);
}

std::string_view to_string(ModelId id) {
  switch (id) {
    case ModelId::Dln: return "dln";
    case ModelId::Zidl: return "zidl";
    case ModelId::Hooked: return "hooked";
    case ModelId::Zihp: return "zihp";
  }
  throw std::invalid_argument("unknown model id");
}

ModelId model_id_from_string(std::string_view name) {
  if (name == "dln") return ModelId::Dln;
  if (name == "zidl") return ModelId::Zidl;
  if (name == "hooked") return ModelId::Hooked;
  if (name == "zihp") return ModelId::Zihp;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

ModelComparison fit_all_models(const CountDataset& data,
                               const SearchConfig& config) {
  check_input(data, config);

  auto job = [&](ModelId id) -> FitResult {
    const Family family = (id == ModelId::Dln || id == ModelId::Zidl)
                              ? Family::DiscretisedLognormal
                              : Family::HookedPowerLaw;
    const bool inflated = id == ModelId::Zidl || id == ModelId::Zihp;
    try {
      return inflated ? fit_zero_inflated(data, family, config)
                      : fit_base(data, family, config);
    } catch (const std::exception& e) {
      // One family failing must not take the comparison down; surface the
      // failure as a non-converged result.
      FitResult fr;
      fr.loglik = kNan;
      fr.aic = kNan;
      fr.ks = kNan;
      fr.n_params = inflated ? 3 : 2;
      fr.converged = false;
      fr.n_total = data.n_total();
      fr.r = data.ones();
      fr.diagnostic = e.what();
      return fr;
    }
  };

  ModelComparison cmp;
  const std::array<ModelId, 4> ids = {ModelId::Dln, ModelId::Zidl,
                                      ModelId::Hooked, ModelId::Zihp};
  if (config.parallel) {
    std::array<std::future<FitResult>, 4> futures;
    for (std::size_t i = 0; i < 4; ++i)
      futures[i] = std::async(std::launch::async, job, ids[i]);
    for (std::size_t i = 0; i < 4; ++i) cmp.results[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < 4; ++i) cmp.results[i] = job(ids[i]);
  }

  // Lowest AIC wins; a loglik tie within 1e-9 (2e-9 in AIC) goes to the
  // earlier model in declared order.
  double min_aic = std::numeric_limits<double>::infinity();
  for (const FitResult& fr : cmp.results) {
    if (std::isfinite(fr.aic) && fr.aic < min_aic) min_aic = fr.aic;
  }
  int contenders = 0;
  bool winner_set = false;
  for (std::size_t i = 0; i < 4; ++i) {
    const double a = cmp.results[i].aic;
    if (!std::isfinite(a) || a > min_aic + 2e-9) continue;
    ++contenders;
    if (!winner_set) {
      cmp.winner = ids[i];
      winner_set = true;
    }
  }
  cmp.tie_break = contenders > 1;

  const double dln_ll = cmp.results[0].loglik;
  const double zidl_ll = cmp.results[1].loglik;
  const double hooked_ll = cmp.results[2].loglik;
  const double zihp_ll = cmp.results[3].loglik;
  cmp.zidl_improvement = std::isfinite(dln_ll) && std::isfinite(zidl_ll) &&
                         zidl_ll - dln_ll > 1.0;
  cmp.zihp_improvement = std::isfinite(hooked_ll) && std::isfinite(zihp_ll) &&
                         zihp_ll - hooked_ll > 1.0;
  return cmp;
}

}  // namespace citefit
