#pragma once

// Delay-versus-field datasets: the CSV interchange format and a seeded
// generator that samples the model with Gaussian noise.
//
// CSV layout:
//   # label: <text>
//   # calibration: adiabatic|nonadiabatic|larmor_clock|synthetic
//   # time_unit: au|as
//   f_au,delay[,sigma]
//   0.05,112.5,3.1
//
// Directives are optional (defaults: time_unit as, calibration adiabatic);
// other '#' lines are comments. Fields are always atomic units.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attoclock/model.hpp"
#include "attoclock/units.hpp"

namespace attoclock {

enum class Calibration { adiabatic, nonadiabatic, larmor_clock, synthetic };

std::string_view to_string(Calibration calibration);
Calibration parse_calibration(std::string_view text);

struct Sample {
  double f = 0;
  double delay = 0;
  std::optional<double> sigma;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Dataset {
  Calibration calibration = Calibration::adiabatic;
  TimeUnit time_unit = TimeUnit::attosecond;
  std::vector<Sample> samples;
  std::string label;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct FieldRange {
  double min = 0;
  double max = 0;
};

// Throws EmptyDataset when there are no samples.
FieldRange field_range(const Dataset& ds);

// Delays and sigmas rescaled to `unit`.
Dataset convert_time_unit(Dataset ds, TimeUnit unit);

Dataset parse_dataset(std::string_view text);
std::string format_dataset(const Dataset& ds);

// Throws IoError, ParseError or EmptyDataset.
Dataset read_dataset(const std::filesystem::path& path);
void write_dataset(const Dataset& ds, const std::filesystem::path& path);

enum class DelayModel { adiabatic_model, nonadiabatic_model, barrier_model };

std::string_view to_string(DelayModel model);
DelayModel parse_delay_model(std::string_view text);

// Evaluates the model at every grid point (in `unit`) and adds N(0, noise_sigma)
// draws from a generator seeded with `seed`. Every sample carries
// sigma = noise_sigma. Throws DomainError for points outside (0, F_a].
Dataset synth_dataset(const AtomicSystem& sys, DelayModel model, std::span<const double> f_grid,
                      double noise_sigma, std::uint64_t seed, TimeUnit unit = TimeUnit::atomic);

}  // namespace attoclock
