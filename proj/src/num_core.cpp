#include "fadingqkd/num_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "fadingqkd/errors.hpp"

namespace fqkd {

double g_entropy(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    std::ostringstream msg;
    msg << "g_entropy: argument must be finite and >= 0, got " << x;
    throw DomainError(msg.str());
  }
  if (x == 0.0) return 0.0;
  // (x+1)log(x+1) - x log x = log(x+1) + x log(1 + 1/x)
  return (std::log1p(x) + x * std::log1p(1.0 / x)) * kLog2E;
}

namespace {

constexpr double kPiSquaredOver6 = kPi * kPi / 6.0;

// |z| <= 1/2: sum z^k / k^2 converges at least as fast as 2^-k.
double dilog_series(double z) {
  double term = z;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    term *= z;
  }
  return sum;
}

}  // namespace

double dilog(double z) {
  if (!std::isfinite(z) || z > 1.0) {
    std::ostringstream msg;
    msg << "dilog: argument must be finite and <= 1, got " << z;
    throw DomainError(msg.str());
  }
  if (z == 1.0) return kPiSquaredOver6;
  if (z == 0.0) return 0.0;
  if (z < -1.0) {
    // Inversion: Li2(z) = -pi^2/6 - ln^2(-z)/2 - Li2(1/z), 1/z in (-1, 0).
    const double l = std::log(-z);
    return -kPiSquaredOver6 - 0.5 * l * l - dilog(1.0 / z);
  }
  if (z < -0.5) {
    // Landen: Li2(z) = -Li2(z/(z-1)) - ln^2(1-z)/2, z/(z-1) in (1/3, 1/2].
    const double l = std::log1p(-z);
    return -dilog_series(z / (z - 1.0)) - 0.5 * l * l;
  }
  if (z <= 0.5) return dilog_series(z);
  // Reflection: Li2(z) = pi^2/6 - ln z ln(1-z) - Li2(1-z), 1-z in (0, 1/2).
  return kPiSquaredOver6 - std::log(z) * std::log1p(-z) - dilog_series(1.0 - z);
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 1) {
    throw DomainError("QuadratureSpec: abs_tol > 0, rel_tol > 0 and max_depth >= 1 required");
  }
}

namespace {

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double result;
  double error;
  int depth;

  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked_eval(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "integrate: integrand is non-finite at x = " << x;
    throw NumericalError(msg.str());
  }
  return y;
}

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = checked_eval(f, center);
  double kronrod = f_center * kWgk[7];
  double gauss = f_center * kWg[3];
  std::array<double, 7> f_lo{};
  std::array<double, 7> f_hi{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f_lo[j] = checked_eval(f, center - dx);
    f_hi[j] = checked_eval(f, center + dx);
    kronrod += kWgk[j] * (f_lo[j] + f_hi[j]);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f_lo[j] + f_hi[j]);
  }
  // QUADPACK-style error scaling against the deviation from the mean.
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(f_center - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));
  }
  asc *= std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  return {a, b, kronrod * half, error, depth};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("integrate: finite bounds with a < b required");
  }
  std::priority_queue<Segment> pending;
  pending.push(gauss_kronrod(f, a, b, 0));
  double total = pending.top().result;
  double total_error = pending.top().error;
  while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    const Segment worst = pending.top();
    if (worst.depth >= spec.max_depth) {
      std::ostringstream msg;
      msg << "integrate: subdivision depth " << spec.max_depth
          << " exhausted near [" << worst.a << ", " << worst.b
          << "] with error estimate " << total_error;
      throw NumericalError(msg.str());
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw NumericalError("integrate: interval no longer divisible in floating point");
    }
    pending.pop();
    const Segment left = gauss_kronrod(f, worst.a, mid, worst.depth + 1);
    const Segment right = gauss_kronrod(f, mid, worst.b, worst.depth + 1);
    total += left.result + right.result - worst.result;
    total_error += left.error + right.error - worst.error;
    pending.push(left);
    pending.push(right);
  }
  // Re-sum to shed drift from the incremental updates.
  total = 0.0;
  while (!pending.empty()) {
    total += pending.top().result;
    pending.pop();
  }
  return total;
}

namespace {

double checked_objective(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "maximize_scalar: objective is non-finite at x = " << x;
    throw NumericalError(msg.str());
  }
  return y;
}

}  // namespace

double interval_mean(const std::function<double(double)>& f, double lo, double hi) {
  const QuadratureSpec relative_only{std::numeric_limits<double>::min(), 1e-13, 60};
  return integrate(f, lo, hi, relative_only) / (hi - lo);
}

ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo,
                              double hi, double x_tol, int scan_points) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("maximize_scalar: finite bounds with lo < hi required");
  }
  if (!(x_tol > 0.0)) throw DomainError("maximize_scalar: x_tol must be > 0");
  if (scan_points < 3) throw DomainError("maximize_scalar: scan_points must be >= 3");

  std::vector<double> xs(static_cast<std::size_t>(scan_points));
  std::vector<double> ys(xs.size());
  const double step = (hi - lo) / (scan_points - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = i + 1 == xs.size() ? hi : lo + static_cast<double>(i) * step;
    ys[i] = checked_objective(f, xs[i]);
  }
  const auto best = static_cast<std::size_t>(
      std::distance(ys.begin(), std::max_element(ys.begin(), ys.end())));

  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[std::min(best + 1, xs.size() - 1)];
  constexpr double kInvPhi = 0.618033988749894848204586834365638;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = checked_objective(f, c);
  double fd = checked_objective(f, d);
  while (b - a > x_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = checked_objective(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = checked_objective(f, d);
    }
  }
  ScalarMaximum result{0.5 * (a + b), 0.0};
  result.value = checked_objective(f, result.x);
  for (const ScalarMaximum candidate : {ScalarMaximum{c, fc}, ScalarMaximum{d, fd},
                                        ScalarMaximum{xs[best], ys[best]}}) {
    if (candidate.value > result.value) result = candidate;
  }
  return result;
}

}  // namespace fqkd
