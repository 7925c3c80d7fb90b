#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fadingqkd/channel.hpp"
#include "fadingqkd/fading.hpp"

namespace fqkd::cli {

enum class Approach { fixed, hba_exact, hba_asymptotic, cma };
enum class XAxis { t_min, t_mean, attenuation_db, variance };

/// Throws DomainError on unknown names.
Approach parse_approach(std::string_view name);
XAxis parse_x_axis(std::string_view name);
std::string_view to_string(Approach a);
std::string_view to_string(XAxis x);

/// -10 log10(T); DomainError unless 0 < T <= 1.
double attenuation_db(double t);

/// Inclusive arithmetic range; the last point is kept when it lands within
/// step * 1e-9 of `stop`.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

/// `count` log-spaced points from `start` to `stop` inclusive.
std::vector<double> log_space(double start, double stop, int count);

/// The fixed approach ignores the width and evaluates T = t_min.
SkrBreakdown run_point(Approach approach, double v, double eps, const FadingUniform& fading);

struct PointRecord {
  Approach approach;
  double v;
  double eps;
  double t_min;
  double delta_t;
  SkrBreakdown skr{0.0, 0.0, 0.0};
  std::optional<double> v_opt;
  /// Empty on success.
  std::string error;

  double t_mean() const { return t_min + 0.5 * delta_t; }
};

/// Evaluates one grid point. With `optimize_v` (CMA only) `v` is ignored and
/// replaced by the optimal variance. Domain errors propagate; numerical
/// failures are stored in `error`.
PointRecord evaluate_point(Approach approach, double v, double eps, double t_min, double delta_t,
                           bool optimize_v = false);

struct SweepConfig {
  std::vector<Approach> approaches{Approach::hba_exact, Approach::cma};
  std::vector<double> v_list{10.0};
  std::vector<double> eps_list{0.0};
  Range t_min{0.01, 0.8, 0.01};
  std::vector<double> delta_t_list{0.2};
  XAxis x_axis = XAxis::t_min;
  bool optimize_v = false;
  std::string csv_path;
  std::string svg_path;
  bool log_y = false;
  /// Quantities drawn in the SVG: any of rate, holevo, mutual_info.
  std::vector<std::string> plot{"rate"};
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
};

struct SweepResult {
  std::vector<PointRecord> rows;
  std::vector<std::string> skipped;

  bool partial() const;
};

/// Grid order is approach, eps, delta_t, V, t_min (last varies fastest).
/// Points violating a precondition are skipped and listed with the reason.
SweepResult run_sweep(const SweepConfig& cfg);

std::string_view csv_header();
std::string csv_row(const PointRecord& r);
void write_csv(std::ostream& out, const std::vector<PointRecord>& rows);

/// printf("%.17g") in the C locale.
std::string format_real(double x);

}  // namespace fqkd::cli
