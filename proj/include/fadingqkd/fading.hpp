#pragma once

namespace fqkd {

/// Uniformly distributed transmittance on [t_min, t_min + delta_t].
///
/// delta_t = 0 is a point mass at t_min (which must then be > 0). A zero
/// lower edge is accepted for a non-degenerate width so that moment and
/// sampling routines can work on [0, 1]; fixed-channel evaluations at T = 0
/// still fail in the channel layer.
/// Below this width the closed-form averages, being differences of
/// primitives, lose digits to cancellation and are taken by quadrature.
inline constexpr double kNarrowWidth = 1e-3;

class FadingUniform {
 public:
  FadingUniform(double t_min, double delta_t);

  double t_min() const { return t_min_; }
  double delta_t() const { return delta_t_; }
  double t_max() const { return t_max_; }
  double t_mean() const { return t_min_ + 0.5 * delta_t_; }
  /// t_max - t_min as represented; averages divide by this rather than by
  /// delta_t so that rounding of t_max does not leak into them.
  double width() const { return t_max_ - t_min_; }
  bool degenerate() const { return delta_t_ == 0.0; }

 private:
  double t_min_;
  double delta_t_;
  double t_max_;
};

}  // namespace fqkd
