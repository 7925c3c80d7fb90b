#include "fadingqkd/cma.hpp"

#include <cmath>
#include <sstream>

#include "fadingqkd/errors.hpp"
#include "fadingqkd/num_core.hpp"

namespace fqkd {

namespace {

void require_variance_and_noise(double v, double eps, const char* where) {
  if (!std::isfinite(v) || v < 1.0 || !std::isfinite(eps) || eps < 0.0) {
    std::ostringstream msg;
    msg << where << ": V >= 1 and eps >= 0 required, got V=" << v << ", eps=" << eps;
    throw DomainError(msg.str());
  }
}

}  // namespace

TransmittanceMoments moments_uniform(const FadingUniform& fading) {
  const double p = std::sqrt(fading.t_min());
  if (fading.degenerate()) return {p, fading.t_min(), 0.0};
  const double q = std::sqrt(fading.t_max());
  const double sum = p + q;
  // (2/3)(q^3 - p^3)/(q^2 - p^2) = (2/3)(p^2 + pq + q^2)/(p + q)
  const double mean_sqrt = 2.0 * (p * p + p * q + q * q) / (3.0 * sum);
  // <T> - <sqrt T>^2 = (q - p)^2 (p^2 + 4pq + q^2) / (18 (p + q)^2)
  const double gap = q - p;
  const double var = gap * gap * (p * p + 4.0 * p * q + q * q) / (18.0 * sum * sum);
  return {mean_sqrt, fading.t_mean(), var};
}

EffectiveChannel effective_params(const TransmittanceMoments& moments, double eps, double v) {
  require_variance_and_noise(v, eps, "effective_params");
  if (!(moments.mean_sqrt_t > 0.0)) throw DomainError("effective_params: <sqrt T> must be > 0");
  const double t_eff = moments.mean_sqrt_t * moments.mean_sqrt_t;
  const double ratio = moments.var_sqrt_t / t_eff;
  const double eps_eff = eps * (1.0 + ratio) + ratio * (v - 1.0);
  // chi_eff = ratio * V + [(1 - <T>)/t_eff + eps(1 + ratio)], using t_eff + Var = <T>.
  const double b_coef = (1.0 - moments.mean_t) / t_eff + eps * (1.0 + ratio);
  return {t_eff, eps_eff, 1.0 / t_eff - 1.0 + eps_eff, ratio, b_coef};
}

TwoModeCovariance avg_covariance(const TransmittanceMoments& moments, double v, double eps) {
  require_variance_and_noise(v, eps, "avg_covariance");
  return {v, moments.mean_t * (v - 1.0 + eps) + 1.0, moments.mean_sqrt_t * std::sqrt(v * v - 1.0)};
}

double avg_mutual_information(double v, double eps, const FadingUniform& fading) {
  require_variance_and_noise(v, eps, "avg_mutual_information");
  const double v_a = v - 1.0;
  if (v_a == 0.0) return 0.0;
  if (fading.degenerate()) return mutual_information_fixed(ChannelParams(v, fading.t_min(), eps));

  const double lo = fading.t_min();
  const double hi = fading.t_max();
  if (fading.width() < kNarrowWidth) {
    return interval_mean([v_a, eps](double t) { return 0.5 * std::log1p(t * v_a / (1.0 + eps * t)) * kLog2E; },
                         lo, hi);
  }
  const double signal = eps + v_a;
  // ln(1 + k hi) - ln(1 + k lo) without losing the small-k digits.
  const auto log_ratio = [lo, hi](double k) { return std::log1p(k * hi) - std::log1p(k * lo); };
  // (1/eps) ln((1 + eps lo)/(1 + eps hi)) tends to -(hi - lo) as eps -> 0.
  const double noise_term = eps == 0.0 ? -(hi - lo) : -log_ratio(eps) / eps;
  const double bracket = noise_term + hi * (std::log1p(hi * signal) - std::log1p(eps * hi)) +
                         log_ratio(signal) / signal +
                         lo * (std::log1p(eps * lo) - std::log1p(lo * signal));
  return bracket * kLog2E / (2.0 * fading.width());
}

double holevo_cma(double v, double eps, const FadingUniform& fading) {
  const EffectiveChannel eff = effective_params(moments_uniform(fading), eps, v);
  // chi of (V, t_eff, eps_eff) is 1/t_eff - 1 + eps_eff = chi_eff.
  return holevo_fixed(ChannelParams(v, eff.t_eff, eff.eps_eff));
}

SkrBreakdown skr_cma(double v, double eps, const FadingUniform& fading) {
  return SkrBreakdown::from(avg_mutual_information(v, eps, fading), holevo_cma(v, eps, fading));
}

VarianceOptimum optimal_variance(double eps, const FadingUniform& fading, double v_lo,
                                 double v_hi, double rel_tol) {
  if (!(v_lo >= 1.0) || !(v_lo < v_hi) || !std::isfinite(v_hi)) {
    throw DomainError("optimal_variance: 1 <= v_lo < v_hi required");
  }
  const auto rate_at_log_v = [eps, &fading](double log_v) {
    return skr_cma(std::exp(log_v), eps, fading).rate;
  };
  const ScalarMaximum best =
      maximize_scalar(rate_at_log_v, std::log(v_lo), std::log(v_hi), rel_tol);
  // Land exactly on the caller's bounds rather than exp(log(bound)).
  double v_opt = std::exp(best.x);
  if (best.x == std::log(v_lo)) v_opt = v_lo;
  if (best.x == std::log(v_hi)) v_opt = v_hi;
  return {v_opt, skr_cma(v_opt, eps, fading).rate};
}

CmaScaling cma_scaling(double v, const EffectiveChannel& eff) {
  if (!std::isfinite(v) || v < 1.0) throw DomainError("cma_scaling: V >= 1 required");
  const double t = eff.t_eff;
  const double a = eff.a_coef;
  const double b = eff.b_coef;
  const double chi = eff.chi_eff;

  CmaScaling out{};
  out.a0 = t * (1.0 + a + b / v);
  out.b0 = t * (a + b / v + 1.0 / (v * v));
  const double b_direct = t * (v * chi + 1.0);
  out.b_over_v4 = (b_direct / (v * v)) * (b_direct / (v * v));
  out.lambda3_over_v = std::sqrt(v * (1.0 + v * chi) / (v + chi)) / v;
  out.b0_squared_limit = (t * a) * (t * a);
  out.sqrt_b0_over_a0_limit = std::sqrt(a / (1.0 + a));
  return out;
}

}  // namespace fqkd
