// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#include "citefit/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace citefit {

AxisTransform::AxisTransform(double lo, double hi, bool log_scale, double shift)
    : log_scale_(log_scale), shift_(shift) {
  if (!(lo < hi)) throw std::invalid_argument("AxisTransform: lo must be < hi");
  if (log_scale_) {
    if (!(lo > shift))
      throw std::invalid_argument("AxisTransform: log axis needs lo > shift");
    tlo_ = std::log(lo - shift);
    thi_ = std::log(hi - shift);
  } else {
    tlo_ = lo;
    thi_ = hi;
  }
}

double AxisTransform::to_internal(double x) const {
  double t = log_scale_ ? std::log(x - shift_) : x;
  // Clamp strictly inside the box so the logit stays finite.
  const double span = thi_ - tlo_;
  double f = (t - tlo_) / span;
  f = std::min(1.0 - 1e-12, std::max(1e-12, f));
  return std::log(f / (1.0 - f));
}

namespace {

// The logistic saturates to exactly 0 or 1 once exp overflows; keep the
// fraction strictly interior so the box never collapses onto an edge.
double interior_fraction(double y) {
  const double f = 1.0 / (1.0 + std::exp(-y));
  if (f <= 0.0) return std::numeric_limits<double>::denorm_min();
  if (f >= 1.0) return std::nextafter(1.0, 0.0);
  return f;
}

}  // namespace

double AxisTransform::to_natural(double y) const {
  const double f = interior_fraction(y);
  const double t = tlo_ + f * (thi_ - tlo_);
  return log_scale_ ? shift_ + std::exp(t) : t;
}

double AxisTransform::box_fraction(double y) const {
  return interior_fraction(y);
}

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> x0, std::span<const double> step,
    const NelderMeadOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead: empty start point");
  if (step.size() != dim)
    throw std::invalid_argument("nelder_mead: step size mismatch");

  NelderMeadResult result;
  const std::size_t points = dim + 1;
  std::vector<std::vector<double>> simplex(points, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> f(points);
  for (std::size_t i = 1; i < points; ++i) simplex[i][i - 1] += step[i - 1];

  auto eval = [&](std::span<const double> x) {
    ++result.evaluations;
    const double v = objective(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (std::size_t i = 0; i < points; ++i) f[i] = eval(simplex[i]);

  std::vector<std::size_t> order(points);
  std::vector<double> centroid(dim), candidate(dim);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (std::size_t i = 0; i < points; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });

    const std::size_t best = order[0];
    const std::size_t worst = order[points - 1];
    const std::size_t second_worst = order[points - 2];

    if (f[worst] - f[best] < options.f_tol) {
      result.converged = true;
      break;
    }
    result.iterations = iter + 1;  // this pass goes on to move the simplex

    // Centroid of all points except the worst.
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < points; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
    }
    for (std::size_t d = 0; d < dim; ++d) centroid[d] /= static_cast<double>(dim);

    // Reflection
    for (std::size_t d = 0; d < dim; ++d)
      candidate[d] = centroid[d] + (centroid[d] - simplex[worst][d]);
    double f_reflect = eval(candidate);

    if (f_reflect < f[best]) {
      // Expansion
      std::vector<double> expanded(dim);
      for (std::size_t d = 0; d < dim; ++d)
        expanded[d] = centroid[d] + 2.0 * (centroid[d] - simplex[worst][d]);
      const double f_expand = eval(expanded);
      if (f_expand < f_reflect) {
        simplex[worst] = std::move(expanded);
        f[worst] = f_expand;
      } else {
        simplex[worst] = candidate;
        f[worst] = f_reflect;
      }
      continue;
    }

    if (f_reflect < f[second_worst]) {
      simplex[worst] = candidate;
      f[worst] = f_reflect;
      continue;
    }

    // Contraction (outside toward the reflection if it helped, else inside).
    if (f_reflect < f[worst]) {
      for (std::size_t d = 0; d < dim; ++d)
        candidate[d] = centroid[d] + 0.5 * (candidate[d] - centroid[d]);
    } else {
      for (std::size_t d = 0; d < dim; ++d)
        candidate[d] = centroid[d] + 0.5 * (simplex[worst][d] - centroid[d]);
    }
    const double f_contract = eval(candidate);
    if (f_contract < std::min(f_reflect, f[worst])) {
      simplex[worst] = candidate;
      f[worst] = f_contract;
      continue;
    }

    // Shrink toward the best point.
    for (std::size_t i = 0; i < points; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < dim; ++d)
        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      f[i] = eval(simplex[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < points; ++i)
    if (f[i] < f[best]) best = i;
  result.x = simplex[best];
  result.fmin = f[best];
  return result;
}

}  // namespace citefit
