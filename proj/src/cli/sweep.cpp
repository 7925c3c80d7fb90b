#include "fadingqkd/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "fadingqkd/cma.hpp"
#include "fadingqkd/errors.hpp"
#include "fadingqkd/hba.hpp"

namespace fqkd::cli {

namespace {

constexpr std::pair<Approach, std::string_view> kApproachNames[] = {
    {Approach::fixed, "fixed"},
    {Approach::hba_exact, "hba_exact"},
    {Approach::hba_asymptotic, "hba_asymptotic"},
    {Approach::cma, "cma"},
};

constexpr std::pair<XAxis, std::string_view> kAxisNames[] = {
    {XAxis::t_min, "t_min"},
    {XAxis::t_mean, "t_mean"},
    {XAxis::attenuation_db, "attenuation_db"},
    {XAxis::variance, "variance"},
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return quoted + '"';
}

struct GridPoint {
  Approach approach;
  double v;
  double eps;
  double t_min;
  double delta_t;
};

std::vector<GridPoint> build_grid(const SweepConfig& cfg) {
  const std::vector<double> t_mins = cfg.t_min.values();
  std::vector<GridPoint> grid;
  for (Approach a : cfg.approaches) {
    // The fixed channel has no width; a CMA optimization has no input V.
    const std::vector<double> widths = a == Approach::fixed ? std::vector<double>{0.0} : cfg.delta_t_list;
    const bool optimized = cfg.optimize_v && a == Approach::cma;
    const std::vector<double> vs = optimized ? std::vector<double>{NAN} : cfg.v_list;
    for (double eps : cfg.eps_list)
      for (double dt : widths)
        for (double v : vs)
          for (double t : t_mins) grid.push_back({a, v, eps, t, dt});
  }
  return grid;
}

}  // namespace

Approach parse_approach(std::string_view name) {
  for (const auto& [a, n] : kApproachNames)
    if (n == name) return a;
  throw DomainError("unknown approach '" + std::string(name) +
                    "' (expected fixed, hba_exact, hba_asymptotic or cma)");
}

XAxis parse_x_axis(std::string_view name) {
  for (const auto& [x, n] : kAxisNames)
    if (n == name) return x;
  throw DomainError("unknown x_axis '" + std::string(name) +
                    "' (expected t_min, t_mean, attenuation_db or variance)");
}

std::string_view to_string(Approach a) {
  for (const auto& [x, n] : kApproachNames)
    if (x == a) return n;
  return "?";
}

std::string_view to_string(XAxis a) {
  for (const auto& [x, n] : kAxisNames)
    if (x == a) return n;
  return "?";
}

double attenuation_db(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("attenuation_db: 0 < T <= 1 required");
  // 0.0 - x keeps T = 1 at +0 dB.
  return 0.0 - 10.0 * std::log10(t);
}

std::vector<double> Range::values() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("range: finite start/stop and step > 0 required");
  }
  if (stop < start) throw DomainError("range: stop must not be below start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + static_cast<double>(i) * step;
  return out;
}

std::vector<double> log_space(double start, double stop, int count) {
  if (!(start > 0.0) || !(stop >= start) || count < 1 || (count == 1 && stop != start)) {
    throw DomainError("log_space: 0 < start <= stop and count >= 1 required");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double l0 = std::log(start);
  const double l1 = std::log(stop);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = count == 1 ? start : std::exp(l0 + (l1 - l0) * i / (count - 1));
  out.front() = start;
  out.back() = stop;
  return out;
}

SkrBreakdown run_point(Approach approach, double v, double eps, const FadingUniform& fading) {
  switch (approach) {
    case Approach::fixed:
      return skr_fixed(ChannelParams(v, fading.t_min(), eps));
    case Approach::hba_exact:
      return skr_hba_exact(v, eps, fading);
    case Approach::hba_asymptotic:
      return skr_hba_asymptotic(v, eps, fading);
    case Approach::cma:
      return skr_cma(v, eps, fading);
  }
  throw DomainError("run_point: unknown approach");
}

PointRecord evaluate_point(Approach approach, double v, double eps, double t_min, double delta_t,
                           bool optimize_v) {
  if (optimize_v && approach != Approach::cma) {
    throw DomainError("optimize_v applies to the cma approach only");
  }
  PointRecord rec{approach, v, eps, t_min, delta_t, {0.0, 0.0, 0.0}, std::nullopt, {}};
  const FadingUniform fading(t_min, delta_t);
  try {
    if (optimize_v) {
      const VarianceOptimum opt = optimal_variance(eps, fading);
      rec.v = opt.v_opt;
      rec.v_opt = opt.v_opt;
    }
    rec.skr = run_point(approach, rec.v, eps, fading);
  } catch (const NumericalError& e) {
    rec.error = e.what();
  }
  return rec;
}

void SweepConfig::validate() const {
  if (approaches.empty()) throw DomainError("sweep: approaches must not be empty");
  if (eps_list.empty()) throw DomainError("sweep: eps_list must not be empty");
  if (delta_t_list.empty()) throw DomainError("sweep: delta_t_list must not be empty");
  const bool needs_v = std::any_of(approaches.begin(), approaches.end(),
                                   [this](Approach a) { return !(optimize_v && a == Approach::cma); });
  if (needs_v && v_list.empty()) throw DomainError("sweep: v must not be empty");
  t_min.values();
  for (const std::string& q : plot) {
    if (q != "rate" && q != "holevo" && q != "mutual_info") {
      throw DomainError("sweep: plot entries must be rate, holevo or mutual_info, got '" + q + "'");
    }
  }
}

bool SweepResult::partial() const {
  return std::any_of(rows.begin(), rows.end(), [](const PointRecord& r) { return !r.error.empty(); });
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<GridPoint> grid = build_grid(cfg);
  std::vector<std::optional<PointRecord>> results(grid.size());
  std::vector<std::string> reasons(grid.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      const GridPoint& p = grid[i];
      if (p.t_min + p.delta_t > 1.0 + 1e-12) {
        reasons[i] = "t_min + delta_t exceeds 1";
        continue;
      }
      try {
        results[i] = evaluate_point(p.approach, p.v, p.eps, p.t_min, p.delta_t,
                                    cfg.optimize_v && p.approach == Approach::cma);
      } catch (const DomainError& e) {
        reasons[i] = e.what();
      }
    }
  };
  unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(grid.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  SweepResult out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (results[i]) {
      out.rows.push_back(std::move(*results[i]));
      continue;
    }
    const GridPoint& p = grid[i];
    std::ostringstream line;
    line << "skip " << to_string(p.approach) << " V=" << format_real(p.v) << " eps=" << format_real(p.eps)
         << " t_min=" << format_real(p.t_min) << " delta_t=" << format_real(p.delta_t) << ": " << reasons[i];
    out.skipped.push_back(line.str());
  }
  return out;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view csv_header() {
  return "approach,V,eps,t_min,delta_t,t_mean,attenuation_db,mutual_info_bits,holevo_bits,rate_bits,v_opt,error";
}

std::string csv_row(const PointRecord& r) {
  std::string row;
  const auto cell = [&row](const std::string& s) {
    row += s;
    row += ',';
  };
  cell(std::string(to_string(r.approach)));
  cell(format_real(r.v));
  cell(format_real(r.eps));
  cell(format_real(r.t_min));
  cell(format_real(r.delta_t));
  cell(format_real(r.t_mean()));
  cell(r.t_min > 0.0 ? format_real(attenuation_db(r.t_min)) : std::string());
  const bool ok = r.error.empty();
  cell(ok ? format_real(r.skr.mutual_info) : std::string());
  cell(ok ? format_real(r.skr.holevo) : std::string());
  cell(ok ? format_real(r.skr.rate) : std::string());
  cell(r.v_opt ? format_real(*r.v_opt) : std::string());
  row += csv_escape(r.error);
  return row;
}

void write_csv(std::ostream& out, const std::vector<PointRecord>& rows) {
  out << csv_header() << '\n';
  for (const PointRecord& r : rows) out << csv_row(r) << '\n';
}

}  // namespace fqkd::cli
