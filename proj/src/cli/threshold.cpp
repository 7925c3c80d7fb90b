#include "fadingqkd/cli/threshold.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "fadingqkd/errors.hpp"

namespace fqkd::cli {

namespace {

double default_hi(Approach approach, double delta_t) {
  switch (approach) {
    case Approach::fixed:
      return 1.0;
    case Approach::hba_asymptotic:
      // The closed-form average needs t_max < 1.
      return 1.0 - delta_t - 1e-6;
    default:
      return 1.0 - delta_t;
  }
}

}  // namespace

Threshold find_positive_threshold(Approach approach, double v, double eps, double delta_t,
                                  const ThresholdOptions& options) {
  const double width = approach == Approach::fixed ? 0.0 : delta_t;
  const double lo = options.lo.value_or(1e-4);
  const double hi = options.hi.value_or(default_hi(approach, width));
  if (!(lo > 0.0) || !(hi > lo) || !(options.tol > 0.0) || options.samples < 2) {
    throw DomainError("find_positive_threshold: need 0 < lo < hi, tol > 0 and samples >= 2");
  }
  const auto rate = [&](double t_min) { return run_point(approach, v, eps, FadingUniform(t_min, width)).rate; };

  std::vector<double> rates(static_cast<std::size_t>(options.samples));
  for (int i = 0; i < options.samples; ++i) {
    rates[static_cast<std::size_t>(i)] = rate(lo + (hi - lo) * i / (options.samples - 1));
  }
  for (std::size_t i = 1; i < rates.size(); ++i) {
    if (rates[i] < rates[i - 1] - 1e-12 * std::max(1.0, std::abs(rates[i - 1]))) {
      std::ostringstream msg;
      msg << "find_positive_threshold: rate is not monotone in t_min on [" << lo << ", " << hi << "]";
      throw DomainError(msg.str());
    }
  }

  Threshold out{std::nullopt, 0.0, lo, hi};
  if (rates.front() > 0.0 || rates.back() <= 0.0) return out;

  // Invariant: rate(a) <= 0 < rate(b).
  double a = lo;
  double b = hi;
  while (b - a > options.tol) {
    const double mid = 0.5 * (a + b);
    (rate(mid) > 0.0 ? b : a) = mid;
  }
  out.t_min = 0.5 * (a + b);
  out.attenuation_db = attenuation_db(*out.t_min);
  return out;
}

}  // namespace fqkd::cli
