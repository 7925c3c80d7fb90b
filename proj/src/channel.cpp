#include "fadingqkd/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fadingqkd/errors.hpp"
#include "fadingqkd/num_core.hpp"

namespace fqkd {

namespace {

void require_transmittance(double t, const char* where) {
  if (!std::isfinite(t) || !(t > 0.0) || t > 1.0) {
    std::ostringstream msg;
    msg << where << ": transmittance must satisfy 0 < T <= 1, got " << t;
    throw DomainError(msg.str());
  }
}

void require_excess_noise(double eps, const char* where) {
  if (!std::isfinite(eps) || eps < 0.0) {
    std::ostringstream msg;
    msg << where << ": excess noise must be finite and >= 0, got " << eps;
    throw DomainError(msg.str());
  }
}

}  // namespace

ChannelParams::ChannelParams(double v, double t, double eps) : v_(v), t_(t), eps_(eps) {
  if (!std::isfinite(v) || v < 1.0) {
    std::ostringstream msg;
    msg << "ChannelParams: variance must satisfy V >= 1, got " << v;
    throw DomainError(msg.str());
  }
  require_transmittance(t, "ChannelParams");
  require_excess_noise(eps, "ChannelParams");
}

double ChannelParams::chi() const { return derive_chi(t_, eps_); }

double derive_chi(double t, double eps) {
  require_transmittance(t, "derive_chi");
  require_excess_noise(eps, "derive_chi");
  return 1.0 / t - 1.0 + eps;
}

double derive_omega(double t, double eps) {
  require_transmittance(t, "derive_omega");
  require_excess_noise(eps, "derive_omega");
  if (t >= 1.0) throw DomainError("derive_omega: thermal variance diverges at T = 1");
  return 1.0 + t * eps / (1.0 - t);
}

TwoModeCovariance fixed_covariance(const ChannelParams& p) {
  const double v = p.v();
  const double t = p.t();
  // T(V + chi) = T(V_A + eps) + 1 avoids the 1/T in chi.
  return {v, t * (p.v_a() + p.eps()) + 1.0, std::sqrt(t * (v * v - 1.0))};
}

namespace {

// (l1 + l2)^2 = (a + b)^2 - 4c^2 and (l1 - l2)^2 = (a - b)^2. The caller
// supplies a + b - 2c, which is the factor that cancels when l1 and l2 merge.
SymplecticPair pair_from_factors(double sum_minus, double diff, double sqrt_det,
                                 const TwoModeCovariance& gamma) {
  const double sum_sq = sum_minus * (gamma.a + gamma.b + 2.0 * gamma.c);
  if (!(sum_sq > 0.0) || !std::isfinite(sum_sq)) {
    std::ostringstream msg;
    msg << "symplectic_pair: (a + b)^2 - 4c^2 = " << sum_sq << " is not positive (unphysical covariance a="
        << gamma.a << ", b=" << gamma.b << ", c=" << gamma.c << ")";
    throw NumericalError(msg.str());
  }
  const double lambda1 = 0.5 * (std::sqrt(sum_sq) + std::abs(diff));
  // The minus branch cancels at large V; use lambda1 lambda2 = sqrt(det).
  return {lambda1, std::abs(sqrt_det) / lambda1};
}

}  // namespace

SymplecticPair symplectic_pair(const TwoModeCovariance& gamma) {
  const double a = gamma.a;
  const double b = gamma.b;
  return pair_from_factors(a + b - 2.0 * gamma.c, a - b, a * b - gamma.c * gamma.c, gamma);
}

double conditional_eigenvalue(const TwoModeCovariance& gamma) {
  // Conditional matrix diag(a - c^2/b, a) after homodyning Bob's x quadrature.
  return std::sqrt(gamma.a * (gamma.a - gamma.c * gamma.c / gamma.b));
}

double mutual_information_fixed(const ChannelParams& p) {
  // (V + chi)/(1 + chi) = 1 + T V_A / (1 + eps T)
  return 0.5 * std::log1p(p.t() * p.v_a() / (1.0 + p.eps() * p.t())) * kLog2E;
}

SymplecticPair symplectic_pair(const ChannelParams& p) {
  const double v = p.v();
  const double t = p.t();
  const double eps = p.eps();
  const double rt = std::sqrt(t);
  const TwoModeCovariance gamma = fixed_covariance(p);
  // a + b - 2c = V(1 - sqrt T)^2 + 2 sqrt(T) (V - sqrt(V^2 - 1)) + T chi, all terms
  // non-negative, and a - b = V_A (1 - T) - T eps.
  const double sum_minus = v * (1.0 - rt) * (1.0 - rt) + 2.0 * rt / (v + std::sqrt(v * v - 1.0)) +
                           (1.0 - t + t * eps);
  const double diff = p.v_a() * (1.0 - t) - t * eps;
  // sqrt(B) = T (V chi + 1) is ab - c^2 without its cancellation at large V.
  const double sqrt_b = t * (v * p.chi() + 1.0);
  return pair_from_factors(sum_minus, diff, sqrt_b, gamma);
}

double conditional_eigenvalue(const ChannelParams& p) {
  const double v = p.v();
  const double chi = p.chi();
  return std::sqrt(v * (1.0 + v * chi) / (v + chi));
}

namespace {

double entropy_term(double lambda, const char* name) {
  if (!(lambda >= 1.0 - kPhysicalitySlack)) {
    std::ostringstream msg;
    msg << "holevo: symplectic eigenvalue " << name << " = " << lambda << " is below 1";
    throw NumericalError(msg.str());
  }
  return g_entropy(std::max(0.0, 0.5 * (lambda - 1.0)));
}

}  // namespace

double holevo_from_spectrum(const SymplecticSpectrum& spectrum) {
  return entropy_term(spectrum.lambda1, "lambda1") + entropy_term(spectrum.lambda2, "lambda2") -
         entropy_term(spectrum.lambda3, "lambda3");
}

double holevo_fixed(const ChannelParams& p) {
  const SymplecticPair pair = symplectic_pair(p);
  return holevo_from_spectrum({pair.lambda1, pair.lambda2, conditional_eigenvalue(p)});
}

SkrBreakdown skr_fixed(const ChannelParams& p) {
  return SkrBreakdown::from(mutual_information_fixed(p), holevo_fixed(p));
}

}  // namespace fqkd
