#pragma once

// Deterministic standalone SVG line charts of delay versus field strength.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attoclock/units.hpp"

namespace attoclock::plot {

struct Series {
  std::string label;
  std::vector<double> f;
  std::vector<double> values;
  std::vector<bool> extrapolated;  // drawn dashed
};

struct Options {
  int width = 800;
  int height = 500;
  std::string title;
  TimeUnit time_unit = TimeUnit::attosecond;
};

// One polyline per run of equally-styled intervals; an interval is dashed
// when either endpoint is extrapolated, and non-finite values break the line.
// Throws DomainError when there is nothing finite to draw.
std::string render_svg(std::span<const Series> series, const Options& options);

struct Table {
  std::vector<Series> series;
  TimeUnit time_unit = TimeUnit::attosecond;
};

// Reads either a curve CSV (f_au,value,extrapolated), giving one series
// named `label`, or any CSV whose first column is f_au, giving one series
// per selected column. Without `columns`, the tau_* columns are taken when
// present, else every column. Throws ParseError / EmptyDataset / IoError.
Table parse_table(std::string_view text, std::string_view label, std::span<const std::string> columns = {});
Table read_table(const std::filesystem::path& path, std::string_view label,
                 std::span<const std::string> columns = {});

// ticks covering [lo, hi] with a 1-2-5 step, roughly `target` of them.
std::vector<double> nice_ticks(double lo, double hi, int target = 5);

}  // namespace attoclock::plot
