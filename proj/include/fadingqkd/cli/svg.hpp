#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fadingqkd/cli/sweep.hpp"

namespace fqkd::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label = "bits per use";
  /// Non-positive values are dropped from log plots.
  bool log_y = false;
};

/// Minimal line plot. Values below zero are drawn at zero.
void write_svg(std::ostream& out, const std::vector<Series>& series, const PlotOptions& options);

/// One series per (approach, quantity, remaining parameters), ordered as the
/// rows are. Error rows are left out.
std::vector<Series> series_from_rows(const std::vector<PointRecord>& rows, XAxis x_axis,
                                     const std::vector<std::string>& quantities);

}  // namespace fqkd::cli
