#include "fadingqkd/fading.hpp"

#include <cmath>
#include <sstream>

#include "fadingqkd/errors.hpp"

namespace fqkd {

namespace {
// t_min + delta_t may land a few ulps above 1 for decimal inputs like 0.4 + 0.6.
constexpr double kUpperEdgeSlack = 1e-12;
}  // namespace

FadingUniform::FadingUniform(double t_min, double delta_t)
    : t_min_(t_min), delta_t_(delta_t), t_max_(t_min + delta_t) {
  std::ostringstream msg;
  if (!std::isfinite(t_min) || !std::isfinite(delta_t)) {
    msg << "FadingUniform: non-finite parameters";
  } else if (delta_t < 0.0) {
    msg << "FadingUniform: delta_t must be >= 0, got " << delta_t;
  } else if (t_min < 0.0 || (t_min == 0.0 && delta_t == 0.0)) {
    msg << "FadingUniform: t_min must be > 0 (or 0 with a positive width), got " << t_min;
  } else if (t_max_ > 1.0 + kUpperEdgeSlack) {
    msg << "FadingUniform: t_max = t_min + delta_t must be <= 1, got " << t_max_;
  } else {
    if (t_max_ > 1.0) t_max_ = 1.0;
    return;
  }
  throw DomainError(msg.str());
}

}  // namespace fqkd
