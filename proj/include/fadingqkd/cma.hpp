#pragma once

// Key rate when the fading channel is treated as a classical mixture of
// subchannels: Eve's bound comes from the transmittance-averaged covariance
// matrix, and Alice and Bob reach the ergodic (averaged) mutual information.

#include "fadingqkd/channel.hpp"
#include "fadingqkd/fading.hpp"

namespace fqkd {

struct TransmittanceMoments {
  double mean_sqrt_t;
  double mean_t;
  /// Var(sqrt T) = <T> - <sqrt T>^2.
  double var_sqrt_t;
};

/// Fixed-channel parameters that reproduce the averaged covariance matrix.
///
/// eps_eff carries a Var(sqrt T) * V_A contribution, so an EffectiveChannel is
/// only meaningful for the V it was built with. chi_eff = a_coef * V + b_coef.
struct EffectiveChannel {
  double t_eff;
  double eps_eff;
  double chi_eff;
  double a_coef;
  double b_coef;
};

/// Closed-form uniform moments. Var(sqrt T) is evaluated in a factored form
/// that is exactly zero for a point mass and never negative.
TransmittanceMoments moments_uniform(const FadingUniform& fading);

EffectiveChannel effective_params(const TransmittanceMoments& moments, double eps, double v);

/// a = V, c = <sqrt T> sqrt(V^2 - 1), b = <T>(V_A + eps) + 1.
TwoModeCovariance avg_covariance(const TransmittanceMoments& moments, double v, double eps);

/// Ergodic mutual information: the average of 1/2 log2(1 + T V_A / (1 + eps T))
/// over the fading law, in closed form (with its analytic eps -> 0 limit).
double avg_mutual_information(double v, double eps, const FadingUniform& fading);

/// Holevo bound of the averaged state, through the fixed-channel formulas
/// with T -> t_eff and chi -> chi_eff.
double holevo_cma(double v, double eps, const FadingUniform& fading);

SkrBreakdown skr_cma(double v, double eps, const FadingUniform& fading);

struct VarianceOptimum {
  double v_opt;
  double rate_opt;
};

inline constexpr double kDefaultVarianceLo = 1.0 + 1e-6;
inline constexpr double kDefaultVarianceHi = 1e4;

/// Maximizes the CMA rate over V in [v_lo, v_hi]. The search runs in ln V, so
/// the pre-scan is log-spaced and `rel_tol` is a relative tolerance on V.
/// A non-positive rate_opt is returned as is and means no key.
VarianceOptimum optimal_variance(double eps, const FadingUniform& fading,
                                 double v_lo = kDefaultVarianceLo,
                                 double v_hi = kDefaultVarianceHi, double rel_tol = 1e-3);

/// Leading-power factorization of the averaged-state invariants:
/// B = B0^2 V^4 with B0 = t_eff (a + b/V + 1/V^2), A0 = t_eff (1 + a + b/V),
/// and lambda3 = sqrt(B0/A0) V.
struct CmaScaling {
  double a0;
  double b0;
  /// B / V^4 from the direct t_eff^2 (V chi_eff + 1)^2 evaluation.
  double b_over_v4;
  /// lambda3 / V from the direct conditional-eigenvalue evaluation.
  double lambda3_over_v;
  /// V -> infinity limits: (t_eff a)^2 and sqrt(a / (1 + a)).
  double b0_squared_limit;
  double sqrt_b0_over_a0_limit;
};

CmaScaling cma_scaling(double v, const EffectiveChannel& eff);

}  // namespace fqkd
