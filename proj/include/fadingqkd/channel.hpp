#pragma once

// Fixed-transmittance Gaussian channel: parameter derivations, the two-mode
// covariance matrix shared by Alice and Bob, its symplectic spectrum and the
// resulting reverse-reconciliation key rate under collective attacks.
//
// Everything is in shot-noise units; entropies are in bits per channel use.

namespace fqkd {

/// Slack granted to the lambda >= 1 physicality bounds.
inline constexpr double kPhysicalitySlack = 1e-12;

/// A single channel point: modulation-plus-vacuum variance V, transmittance
/// T and input-referred excess noise eps.
class ChannelParams {
 public:
  /// Throws DomainError unless V >= 1, 0 < T <= 1 and eps >= 0 (all finite).
  ChannelParams(double v, double t, double eps);

  double v() const { return v_; }
  double t() const { return t_; }
  double eps() const { return eps_; }
  /// Alice's modulation variance V_A = V - 1.
  double v_a() const { return v_ - 1.0; }
  /// Input-referred added noise 1/T - 1 + eps.
  double chi() const;

 private:
  double v_;
  double t_;
  double eps_;
};

/// Standard-form two-mode covariance [[a 1, c Z], [c Z, b 1]], Z = diag(1, -1).
struct TwoModeCovariance {
  double a;
  double b;
  double c;
};

/// Symplectic eigenvalues of the joint state (lambda1 >= lambda2) and of
/// Alice's mode conditioned on Bob's homodyne outcome (lambda3).
struct SymplecticSpectrum {
  double lambda1;
  double lambda2;
  double lambda3;
};

struct SymplecticPair {
  double lambda1;
  double lambda2;
};

struct SkrBreakdown {
  double mutual_info;
  double holevo;
  double rate;

  static SkrBreakdown from(double mutual_info, double holevo) {
    return {mutual_info, holevo, mutual_info - holevo};
  }
};

double derive_chi(double t, double eps);

/// Thermal variance 1 + T eps / (1 - T). Diverges at T = 1, which is rejected.
double derive_omega(double t, double eps);

/// Entanglement-based covariance matrix for a fixed channel:
/// a = V, b = T(V + chi), c = sqrt(T (V^2 - 1)).
TwoModeCovariance fixed_covariance(const ChannelParams& p);

/// Symplectic eigenvalues of a standard-form two-mode covariance.
/// Throws NumericalError when (a + b)^2 - 4c^2 is not positive.
SymplecticPair symplectic_pair(const TwoModeCovariance& gamma);

/// Conditional eigenvalue after homodyne detection of Bob's mode.
double conditional_eigenvalue(const TwoModeCovariance& gamma);

double mutual_information_fixed(const ChannelParams& p);
SymplecticPair symplectic_pair(const ChannelParams& p);
double conditional_eigenvalue(const ChannelParams& p);

/// G((l1-1)/2) + G((l2-1)/2) - G((l3-1)/2). Eigenvalues within
/// kPhysicalitySlack below 1 are treated as 1; anything lower throws
/// NumericalError.
double holevo_from_spectrum(const SymplecticSpectrum& spectrum);

double holevo_fixed(const ChannelParams& p);
SkrBreakdown skr_fixed(const ChannelParams& p);

}  // namespace fqkd
