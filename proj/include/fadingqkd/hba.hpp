#pragma once

// Key rate when Eve's Holevo bound is averaged over the transmittance law
// while Alice and Bob code at the worst-case rate of the weakest channel.
//
// Two pipelines are provided: an exact one that integrates the full Holevo
// bound numerically, and a large-variance one built from the V >> 1
// eigenvalue asymptotics and their closed-form average.

#include "fadingqkd/channel.hpp"
#include "fadingqkd/fading.hpp"
#include "fadingqkd/num_core.hpp"

namespace fqkd {

/// Mutual information at T = t_min, Holevo bound integrated over [t_min, t_max]
/// against the uniform density. A degenerate width evaluates the fixed channel.
SkrBreakdown skr_hba_exact(double v, double eps, const FadingUniform& fading,
                           const QuadratureSpec& spec = {});

/// lambda1 ~ V(1-T), lambda2 ~ omega, lambda3 ~ sqrt((1-T) omega V / T).
/// No lower bound on V is enforced; the approximation is the caller's call.
SymplecticSpectrum asymptotic_eigenvalues(double t, double eps, double v);

/// Large-V Holevo bound 1/2 log2(T(1-T)V/omega) + G((omega-1)/2).
double holevo_asymptotic(double t, double eps, double v);

/// Large-V mutual information 1/2 log2(T / (T + (1-T) omega)) + 1/2 log2 V.
double mutual_information_large_variance(double t, double eps, double v);

/// Closed-form average of G((omega(T)-1)/2) over the fading interval, built
/// from logarithms and dilogarithms at the interval edges.
///
/// Requires eps > 0 (the eps -> 0 limit is 0 and is the caller's to take),
/// eps != 2, t_min > 0, t_max < 1 and a positive width.
double htilde(double eps, const FadingUniform& fading);

/// Closed-form average of holevo_asymptotic over the fading interval.
/// Same domain as htilde; the only V dependence is the additive 1/2 log2 V.
double avg_holevo_analytic(double v, double eps, const FadingUniform& fading);

enum class HbaMutualInfo {
  /// Large-variance form, so that the 1/2 log2 V terms cancel exactly.
  large_variance,
  /// Exact fixed-channel mutual information at t_min.
  exact,
};

/// Large-variance HBA rate. eps = 0 is accepted and uses the vanishing
/// limit of htilde; with HbaMutualInfo::large_variance the rate does not
/// depend on V.
SkrBreakdown skr_hba_asymptotic(double v, double eps, const FadingUniform& fading,
                                HbaMutualInfo mutual_info = HbaMutualInfo::large_variance);

}  // namespace fqkd
