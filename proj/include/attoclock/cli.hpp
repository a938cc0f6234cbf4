#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "attoclock/fitting.hpp"
#include "attoclock/grid.hpp"
#include "attoclock/units.hpp"

namespace attoclock::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 2;
inline constexpr int kExitIoError = 3;

// Everything a subcommand may consume. Unset optionals fall back to
// per-subcommand defaults.
struct RunConfig {
  std::string subcommand;
  double ip = 0.9;
  double zeff = 1.6875;
  double f_min = 0.01;
  std::optional<double> f_max;  // default: atomic field strength
  std::size_t n_points = 200;
  GridScale grid_scale = GridScale::log;
  std::optional<TimeUnit> time_unit_out;
  FitBasis basis = FitBasis::inv_f_offset;
  std::uint64_t seed = 0;
  std::string out;
  bool allow_extrapolation = false;

  std::string in;
  std::string minuend;
  std::string subtrahend;
  std::string adiabatic;
  std::string nonadiabatic;
  std::string lc;
  std::vector<double> z_list{1.0, 1.344};
  std::string model = "adiabatic";
  double noise = 0.0;
  std::vector<std::string> files;
  std::vector<std::string> labels;
  std::vector<std::string> columns;
  std::string title;
  int width = 800;
  int height = 500;
};

// Overlays the keys of a JSON config object onto cfg. Throws ParseError.
void apply_config_json(const std::string& json_text, RunConfig& cfg);

// Entry point behind the `attoclock` executable. Returns the process exit code:
// 0 success, 2 usage/domain/parse error, 3 I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace attoclock::cli
