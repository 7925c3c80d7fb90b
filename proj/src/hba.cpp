#include "fadingqkd/hba.hpp"

#include <cmath>
#include <sstream>

#include "fadingqkd/errors.hpp"

namespace fqkd {

SkrBreakdown skr_hba_exact(double v, double eps, const FadingUniform& fading,
                           const QuadratureSpec& spec) {
  const ChannelParams worst(v, fading.t_min(), eps);
  const double mutual_info = mutual_information_fixed(worst);
  if (fading.degenerate()) return SkrBreakdown::from(mutual_info, holevo_fixed(worst));

  const auto integrand = [v, eps](double t) { return holevo_fixed(ChannelParams(v, t, eps)); };
  const double holevo =
      integrate(integrand, fading.t_min(), fading.t_max(), spec) / fading.width();
  return SkrBreakdown::from(mutual_info, holevo);
}

namespace {

void require_open_transmittance(double t, const char* where) {
  if (!std::isfinite(t) || !(t > 0.0) || !(t < 1.0)) {
    std::ostringstream msg;
    msg << where << ": large-variance asymptotics need 0 < T < 1, got " << t;
    throw DomainError(msg.str());
  }
}

void require_asymptotic_fading(const FadingUniform& fading, const char* where) {
  std::ostringstream msg;
  if (fading.degenerate()) {
    msg << where << ": a positive fading width is required";
  } else if (!(fading.t_min() > 0.0)) {
    msg << where << ": t_min must be > 0";
  } else if (!(fading.t_max() < 1.0)) {
    msg << where << ": t_max must be < 1 (thermal variance diverges at T = 1)";
  } else {
    return;
  }
  throw DomainError(msg.str());
}

}  // namespace

SymplecticSpectrum asymptotic_eigenvalues(double t, double eps, double v) {
  require_open_transmittance(t, "asymptotic_eigenvalues");
  const double omega = derive_omega(t, eps);
  return {v * (1.0 - t), omega, std::sqrt((1.0 - t) * omega * v / t)};
}

double holevo_asymptotic(double t, double eps, double v) {
  require_open_transmittance(t, "holevo_asymptotic");
  const double omega = derive_omega(t, eps);
  return 0.5 * std::log2(t * (1.0 - t) * v / omega) + g_entropy(0.5 * (omega - 1.0));
}

double mutual_information_large_variance(double t, double eps, double v) {
  require_open_transmittance(t, "mutual_information_large_variance");
  const double omega = derive_omega(t, eps);
  return 0.5 * std::log2(t / (t + (1.0 - t) * omega)) + 0.5 * std::log2(v);
}

namespace {

// Antiderivative (times 2) of G((omega(T)-1)/2) in T, with Tb = 1 - T and
// s = 2 Tb + eps T.
double h_average_primitive(double t, double eps) {
  const double tb = 1.0 - t;
  const double s = 2.0 * tb + eps * t;
  const double r = (eps - 1.0) / (eps - 2.0);
  return 2.0 * std::log2(tb) - 2.0 * r * std::log2(t) + 2.0 / (eps - 2.0) * std::log2(s) +
         t * std::log2(eps * t * s / (4.0 * tb * tb)) - r * s * std::log2(s / (eps * t)) -
         eps * kLog2E * (dilog(tb) - dilog((eps - 2.0) * tb / eps));
}

// Antiderivative of 1/2 log2(T) + log2(1-T) - 1/2 log2(1 - (1-eps) T), the
// V-free part of the large-variance Holevo bound without the G term.
double log_terms_primitive(double t, double eps) {
  const double k = 1.0 - eps;
  const double tb = 1.0 - t;
  // (1 - kT) ln(1 - kT) / k, continued through k = 0.
  double shifted;
  if (std::abs(k) < 1e-6) {
    shifted = -t + 0.5 * k * t * t + k * k * t * t * t / 6.0;
  } else {
    const double u = 1.0 - k * t;
    shifted = u * std::log(u) / k;
  }
  return (0.5 * t * std::log(t) - tb * std::log(tb) - t + 0.5 * shifted) * kLog2E;
}

double h_average(double eps, const FadingUniform& fading) {
  if (eps == 0.0) return 0.0;
  if (fading.width() < kNarrowWidth) {
    return interval_mean([eps](double t) { return g_entropy(0.5 * (derive_omega(t, eps) - 1.0)); },
                         fading.t_min(), fading.t_max());
  }
  return (h_average_primitive(fading.t_max(), eps) - h_average_primitive(fading.t_min(), eps)) /
         (2.0 * fading.width());
}

double avg_holevo_large_variance(double v, double eps, const FadingUniform& fading) {
  if (fading.width() < kNarrowWidth) {
    return interval_mean([eps, v](double t) { return holevo_asymptotic(t, eps, v); }, fading.t_min(),
                         fading.t_max());
  }
  const double log_terms =
      (log_terms_primitive(fading.t_max(), eps) - log_terms_primitive(fading.t_min(), eps)) /
      fading.width();
  return log_terms + 0.5 * std::log2(v) + h_average(eps, fading);
}

void require_closed_form_noise(double eps, const char* where) {
  std::ostringstream msg;
  if (!std::isfinite(eps) || !(eps > 0.0)) {
    msg << where << ": eps must be > 0 (the eps -> 0 limit of the h-average is 0), got " << eps;
  } else if (eps == 2.0) {
    msg << where << ": the closed form is singular at eps = 2";
  } else {
    return;
  }
  throw DomainError(msg.str());
}

}  // namespace

double htilde(double eps, const FadingUniform& fading) {
  require_closed_form_noise(eps, "htilde");
  require_asymptotic_fading(fading, "htilde");
  return h_average(eps, fading);
}

double avg_holevo_analytic(double v, double eps, const FadingUniform& fading) {
  require_closed_form_noise(eps, "avg_holevo_analytic");
  require_asymptotic_fading(fading, "avg_holevo_analytic");
  if (!std::isfinite(v) || v < 1.0) throw DomainError("avg_holevo_analytic: V >= 1 required");
  return avg_holevo_large_variance(v, eps, fading);
}

SkrBreakdown skr_hba_asymptotic(double v, double eps, const FadingUniform& fading,
                                HbaMutualInfo mutual_info) {
  if (eps != 0.0) require_closed_form_noise(eps, "skr_hba_asymptotic");
  if (!std::isfinite(eps) || eps < 0.0) throw DomainError("skr_hba_asymptotic: eps >= 0 required");
  require_asymptotic_fading(fading, "skr_hba_asymptotic");
  if (!std::isfinite(v) || v < 1.0) throw DomainError("skr_hba_asymptotic: V >= 1 required");

  const double info = mutual_info == HbaMutualInfo::large_variance
                          ? mutual_information_large_variance(fading.t_min(), eps, v)
                          : mutual_information_fixed(ChannelParams(v, fading.t_min(), eps));
  return SkrBreakdown::from(info, avg_holevo_large_variance(v, eps, fading));
}

}  // namespace fqkd
