#pragma once

// Special functions, adaptive quadrature and bracketed scalar maximization
// shared by every rate computation. All entropies are in bits.

#include <functional>
#include <numbers>

namespace fqkd {

inline constexpr double kLog2E = std::numbers::log2e;
inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kPi = std::numbers::pi;

/// Bosonic entropy function G(x) = (x+1)log2(x+1) - x log2(x), with G(0) = 0.
/// Throws DomainError for negative or non-finite x.
double g_entropy(double x);

/// Real dilogarithm Li2(z) = -int_0^z ln(1-t)/t dt for z <= 1.
/// Power series on |z| <= 1/2, Landen/inversion/reflection identities elsewhere.
double dilog(double z);

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 60;

  void validate() const;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// Subdivides the interval with the largest error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol * |result|). Throws
/// NumericalError when a subinterval would exceed `max_depth` bisections or
/// when f returns a non-finite value.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

struct ScalarMaximum {
  double x;
  double value;
};

/// Maximizes f on [lo, hi]: a uniform pre-scan of `scan_points` nodes picks
/// the best cell, then golden-section search refines it to within x_tol.
/// Boundary maxima are returned exactly at the boundary.
/// Mean of f over [lo, hi] to a relative accuracy of about 1e-13.
double interval_mean(const std::function<double(double)>& f, double lo, double hi);

ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo,
                              double hi, double x_tol, int scan_points = 64);

}  // namespace fqkd
