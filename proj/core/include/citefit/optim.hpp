// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace citefit {

// Maps one bounded natural coordinate onto the whole real line.  The
// optimizer works on the unbounded side, so box constraints never need
// explicit handling.  Positive scale-like parameters use log_scale (the
// logistic interpolation then runs in ln(x - shift)).
class AxisTransform {
 public:
  AxisTransform(double lo, double hi, bool log_scale, double shift = 0.0);

  double to_internal(double x) const;  // natural -> unbounded
  double to_natural(double y) const;   // unbounded -> natural, always in (lo, hi)
  // Position of y inside the box as a fraction in (0, 1); used to detect
  // fits pinned against a bound.
  double box_fraction(double y) const;

 private:
  double tlo_, thi_;
  bool log_scale_;
  double shift_;
};

struct NelderMeadOptions {
  double f_tol = 1e-8;        // converged when max-min objective spread drops below
  int max_iterations = 2000;  // hard iteration cap
};

struct NelderMeadResult {
  std::vector<double> x;
  double fmin = 0.0;
  long long evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

// Classic Nelder-Mead downhill simplex (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2).  Deterministic: no randomness, ties broken
// by index order.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> x0, std::span<const double> step,
    const NelderMeadOptions& options = {});

}  // namespace citefit
