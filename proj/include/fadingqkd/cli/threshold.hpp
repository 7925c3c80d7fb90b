#pragma once

#include <optional>

#include "fadingqkd/cli/sweep.hpp"

namespace fqkd::cli {

struct ThresholdOptions {
  /// Defaults: lo = 1e-4, hi = largest t_min the approach accepts.
  std::optional<double> lo;
  std::optional<double> hi;
  double tol = 1e-5;
  /// Sampled points for the monotonicity and sign checks.
  int samples = 33;
};

struct Threshold {
  /// Empty when the rate keeps one sign over the bracket.
  std::optional<double> t_min;
  double attenuation_db = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Smallest t_min with a positive rate, by bisection on rate(t_min) = 0.
/// Throws DomainError when the sampled rates are not non-decreasing.
Threshold find_positive_threshold(Approach approach, double v, double eps, double delta_t,
                                  const ThresholdOptions& options = {});

}  // namespace fqkd::cli
