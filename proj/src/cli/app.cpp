#include "fadingqkd/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "fadingqkd/cli/config.hpp"
#include "fadingqkd/cli/svg.hpp"
#include "fadingqkd/cli/sweep.hpp"
#include "fadingqkd/cli/threshold.hpp"
#include "fadingqkd/cma.hpp"
#include "fadingqkd/errors.hpp"
#include "fadingqkd/montecarlo.hpp"
#include "fadingqkd/num_core.hpp"

namespace fqkd::cli {

namespace {

struct SweepOptions {
  std::vector<std::string> approaches{"hba_exact", "cma"};
  std::vector<double> v{10.0};
  std::vector<double> v_log_range;
  std::vector<double> eps_list{0.0};
  double t_min_start = 0.01;
  double t_min_stop = 0.8;
  double t_min_step = 0.01;
  std::vector<double> delta_t_list{0.2};
  std::string x_axis = "t_min";
  bool optimize_v = false;
  std::string csv;
  std::string svg;
  bool log_y = false;
  std::vector<std::string> plot{"rate"};
  std::string title;
  unsigned threads = 0;
};

void add_sweep_options(CLI::App& cmd, SweepOptions& o) {
  cmd.add_option("--approaches", o.approaches, "fixed, hba_exact, hba_asymptotic, cma")->delimiter(',');
  cmd.add_option("--v", o.v, "modulation variance list")->delimiter(',');
  cmd.add_option("--v_log_range", o.v_log_range, "start,stop,count log-spaced V (replaces --v)")
      ->delimiter(',')
      ->expected(3);
  cmd.add_option("--eps_list", o.eps_list)->delimiter(',');
  cmd.add_option("--t_min_start", o.t_min_start);
  cmd.add_option("--t_min_stop", o.t_min_stop);
  cmd.add_option("--t_min_step", o.t_min_step);
  cmd.add_option("--delta_t_list", o.delta_t_list)->delimiter(',');
  cmd.add_option("--x_axis", o.x_axis, "t_min, t_mean, attenuation_db or variance");
  cmd.add_option("--optimize_v", o.optimize_v, "use the optimal variance for cma rows");
  cmd.add_option("--csv", o.csv, "CSV output path (stdout when empty)");
  cmd.add_option("--svg", o.svg, "SVG output path");
  cmd.add_option("--log_y", o.log_y);
  cmd.add_option("--plot", o.plot, "rate, holevo, mutual_info")->delimiter(',');
  cmd.add_option("--title", o.title);
  cmd.add_option("--threads", o.threads, "0 = hardware concurrency");
}

// Config entries become option defaults, so flags given on the command line win.
void apply_config(CLI::App& cmd, const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [key, value] : entries) {
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw DomainError("unknown config key '" + key + "'");
    }
    opt->default_val(value);
  }
}

std::string trimmed(std::string s) { return CLI::detail::trim(s); }

SweepConfig to_sweep_config(const SweepOptions& o) {
  SweepConfig cfg;
  cfg.approaches.clear();
  for (const std::string& a : o.approaches) cfg.approaches.push_back(parse_approach(trimmed(a)));
  if (!o.v_log_range.empty()) {
    const double count = o.v_log_range[2];
    if (count != std::floor(count) || count < 1) throw DomainError("v_log_range count must be a positive integer");
    cfg.v_list = log_space(o.v_log_range[0], o.v_log_range[1], static_cast<int>(count));
  } else {
    cfg.v_list = o.v;
  }
  cfg.eps_list = o.eps_list;
  cfg.t_min = {o.t_min_start, o.t_min_stop, o.t_min_step};
  cfg.delta_t_list = o.delta_t_list;
  cfg.x_axis = parse_x_axis(trimmed(o.x_axis));
  cfg.optimize_v = o.optimize_v;
  cfg.csv_path = o.csv;
  cfg.svg_path = o.svg;
  cfg.log_y = o.log_y;
  cfg.plot.clear();
  for (const std::string& q : o.plot) cfg.plot.push_back(trimmed(q));
  cfg.threads = o.threads;
  return cfg;
}

int run_sweep_command(const SweepOptions& o, const AppContext& ctx) {
  const SweepConfig cfg = to_sweep_config(o);
  const SweepResult result = run_sweep(cfg);
  for (const std::string& line : result.skipped) ctx.err << line << '\n';

  if (cfg.csv_path.empty()) {
    write_csv(ctx.out, result.rows);
  } else {
    std::ofstream file(cfg.csv_path, std::ios::binary);
    if (!file) throw DomainError("cannot write " + cfg.csv_path);
    write_csv(file, result.rows);
  }
  if (!cfg.svg_path.empty()) {
    std::ofstream file(cfg.svg_path, std::ios::binary);
    if (!file) throw DomainError("cannot write " + cfg.svg_path);
    PlotOptions plot;
    plot.title = o.title;
    plot.x_label = std::string(to_string(cfg.x_axis));
    plot.log_y = cfg.log_y;
    write_svg(file, series_from_rows(result.rows, cfg.x_axis, cfg.plot), plot);
  }
  ctx.err << result.rows.size() << " rows, " << result.skipped.size() << " skipped\n";
  return result.partial() ? kPartialSweep : kOk;
}

struct McRow {
  const char* name;
  double closed_form;
  double empirical;
  double std_error;
};

int run_mc_validate(double t_min, double delta_t, double v, double eps, const SampleConfig& sc,
                    const AppContext& ctx) {
  const FadingUniform f(t_min, delta_t);
  const TransmittanceMoments exact = moments_uniform(f);
  const TransmittanceMoments est = empirical_moments(f, sc);
  const TwoModeCovariance gamma = avg_covariance(exact, v, eps);
  const TwoModeCovariance gamma_est = empirical_avg_covariance(v, eps, f, sc);

  const double rn = std::sqrt(static_cast<double>(sc.n_samples));
  double mu4 = 0.0;
  if (!f.degenerate()) {
    const double mu = exact.mean_sqrt_t;
    mu4 = integrate([mu](double t) { return std::pow(std::sqrt(t) - mu, 4); }, f.t_min(), f.t_max()) /
          f.delta_t();
  }
  const double se_sqrt = std::sqrt(exact.var_sqrt_t) / rn;
  const double se_t = f.delta_t() / std::sqrt(12.0) / rn;
  const double se_var = std::sqrt(std::max(0.0, mu4 - exact.var_sqrt_t * exact.var_sqrt_t)) / rn;
  const McRow rows[] = {
      {"mean_sqrt_t", exact.mean_sqrt_t, est.mean_sqrt_t, se_sqrt},
      {"mean_t", exact.mean_t, est.mean_t, se_t},
      {"var_sqrt_t", exact.var_sqrt_t, est.var_sqrt_t, se_var},
      {"cov_a", gamma.a, gamma_est.a, 0.0},
      {"cov_b", gamma.b, gamma_est.b, se_t * (v - 1.0 + eps)},
      {"cov_c", gamma.c, gamma_est.c, se_sqrt * std::sqrt(v * v - 1.0)},
  };
  bool inside = true;
  ctx.out << "quantity,closed_form,empirical,std_error,z\n";
  for (const McRow& r : rows) {
    const double diff = r.empirical - r.closed_form;
    // A zero band only holds an exact match; rounding slack on the order of ulps.
    const double z = r.std_error > 0.0 ? diff / r.std_error : (std::abs(diff) <= 1e-12 * std::abs(r.closed_form) ? 0.0 : INFINITY);
    inside = inside && std::abs(z) < 5.0;
    ctx.out << r.name << ',' << format_real(r.closed_form) << ',' << format_real(r.empirical) << ','
            << format_real(r.std_error) << ',' << format_real(z) << '\n';
  }
  ctx.err << (inside ? "all estimates within 5 standard errors\n" : "estimate outside the 5 standard-error band\n");
  return inside ? kOk : kNumericalFailure;
}

std::string find_config_arg(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

}  // namespace

SweepConfig load_sweep_config(const std::filesystem::path& file) {
  CLI::App cmd;
  SweepOptions o;
  add_sweep_options(cmd, o);
  apply_config(cmd, load_config(file));
  cmd.parse(std::vector<std::string>{});
  return to_sweep_config(o);
}

int run_app(const std::vector<std::string>& args, const AppContext& ctx) {
  CLI::App app{"Secret key rates for CV-QKD over uniformly fading channels"};
  app.require_subcommand(1);

  // point
  std::string approach = "fixed";
  double v = 10.0, eps = 0.0, t_min = 0.5, delta_t = 0.0;
  bool optimize_v = false;
  CLI::App* point = app.add_subcommand("point", "evaluate one parameter set");
  point->add_option("--approach", approach, "fixed, hba_exact, hba_asymptotic, cma")->capture_default_str();
  point->add_option("--v", v)->capture_default_str();
  point->add_option("--eps", eps)->capture_default_str();
  point->add_option("--t_min", t_min)->capture_default_str();
  point->add_option("--delta_t", delta_t)->capture_default_str();
  point->add_option("--optimize_v", optimize_v, "cma only")->capture_default_str();

  // sweep and preset share the option set
  SweepOptions sweep_opts;
  std::string config_path;
  CLI::App* sweep = app.add_subcommand("sweep", "grid evaluation to CSV (and SVG)");
  sweep->add_option("--config", config_path, "flat key = value file; flags override it");
  add_sweep_options(*sweep, sweep_opts);

  SweepOptions preset_opts;
  std::string preset_name;
  CLI::App* preset = app.add_subcommand("preset", "run a bundled sweep configuration");
  preset->add_option("name", preset_name, "fig2, fig3 or fig45")->required();
  add_sweep_options(*preset, preset_opts);

  // optimize-v
  double v_lo = kDefaultVarianceLo, v_hi = kDefaultVarianceHi, rel_tol = 1e-3;
  CLI::App* optimize = app.add_subcommand("optimize-v", "CMA rate maximized over V");
  optimize->add_option("--eps", eps)->capture_default_str();
  optimize->add_option("--t_min", t_min)->capture_default_str();
  optimize->add_option("--delta_t", delta_t)->capture_default_str();
  optimize->add_option("--v_lo", v_lo)->capture_default_str();
  optimize->add_option("--v_hi", v_hi)->capture_default_str();
  optimize->add_option("--rel_tol", rel_tol)->capture_default_str();

  // threshold
  ThresholdOptions th;
  double lo = NAN, hi = NAN;
  CLI::App* threshold = app.add_subcommand("threshold", "smallest t_min with a positive rate");
  threshold->add_option("--approach", approach)->capture_default_str();
  threshold->add_option("--v", v)->capture_default_str();
  threshold->add_option("--eps", eps)->capture_default_str();
  threshold->add_option("--delta_t", delta_t)->capture_default_str();
  threshold->add_option("--lo", lo, "bracket start (default 1e-4)");
  threshold->add_option("--hi", hi, "bracket end (default: largest admissible t_min)");
  threshold->add_option("--tol", th.tol)->capture_default_str();

  // mc-validate
  SampleConfig sc;
  CLI::App* mc = app.add_subcommand("mc-validate", "sample moments against the closed forms");
  mc->add_option("--t_min", t_min)->capture_default_str();
  mc->add_option("--delta_t", delta_t)->capture_default_str();
  mc->add_option("--v", v)->capture_default_str();
  mc->add_option("--eps", eps)->capture_default_str();
  mc->add_option("--n", sc.n_samples)->capture_default_str();
  mc->add_option("--seed", sc.seed)->capture_default_str();
  mc->add_option("--workers", sc.workers)->capture_default_str();

  try {
    if (!args.empty() && args[0] == "sweep") {
      const std::string path = find_config_arg(args);
      if (!path.empty()) apply_config(*sweep, load_config(path));
    } else if (args.size() > 1 && args[0] == "preset" && args[1].rfind('-', 0) != 0) {
      apply_config(*preset, load_config(ctx.preset_dir / (args[1] + ".cfg")));
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, ctx.out, ctx.err);
      return code == 0 ? kOk : kInvalidArguments;
    }

    if (*point) {
      const PointRecord rec = evaluate_point(parse_approach(approach), v, eps, t_min, delta_t, optimize_v);
      ctx.out << csv_header() << '\n' << csv_row(rec) << '\n';
      if (!rec.error.empty()) {
        ctx.err << "numerical failure: " << rec.error << '\n';
        return kNumericalFailure;
      }
      return kOk;
    }
    if (*sweep) return run_sweep_command(sweep_opts, ctx);
    if (*preset) return run_sweep_command(preset_opts, ctx);
    if (*optimize) {
      const VarianceOptimum opt = optimal_variance(eps, FadingUniform(t_min, delta_t), v_lo, v_hi, rel_tol);
      ctx.out << "eps,t_min,delta_t,v_opt,rate_bits\n"
              << format_real(eps) << ',' << format_real(t_min) << ',' << format_real(delta_t) << ','
              << format_real(opt.v_opt) << ',' << format_real(opt.rate_opt) << '\n';
      return kOk;
    }
    if (*threshold) {
      if (!std::isnan(lo)) th.lo = lo;
      if (!std::isnan(hi)) th.hi = hi;
      const Approach a = parse_approach(approach);
      const Threshold result = find_positive_threshold(a, v, eps, delta_t, th);
      if (!result.t_min) {
        ctx.out << "no sign change: rate keeps one sign for t_min in [" << format_real(result.lo) << ", "
                << format_real(result.hi) << "]\n";
        return kOk;
      }
      ctx.out << "approach,V,eps,delta_t,t_min_threshold,attenuation_db\n"
              << to_string(a) << ',' << format_real(v) << ',' << format_real(eps) << ','
              << format_real(a == Approach::fixed ? 0.0 : delta_t) << ',' << format_real(*result.t_min) << ','
              << format_real(result.attenuation_db) << '\n';
      return kOk;
    }
    if (*mc) return run_mc_validate(t_min, delta_t, v, eps, sc, ctx);
  } catch (const DomainError& e) {
    ctx.err << "invalid arguments: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const NumericalError& e) {
    ctx.err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kInvalidArguments;
}

}  // namespace fqkd::cli
