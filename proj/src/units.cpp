#include "attoclock/units.hpp"

#include <cmath>

#include "attoclock/errors.hpp"

namespace attoclock::units {

double au_time_to_as(double t_au) { return t_au * kAttosecondsPerAtomicTime; }

double as_to_au_time(double t_as) { return t_as / kAttosecondsPerAtomicTime; }

double intensity_to_field(double intensity_w_cm2) {
  if (!(intensity_w_cm2 >= 0.0)) {
    throw DomainError("intensity must be nonnegative, got " + std::to_string(intensity_w_cm2));
  }
  return std::sqrt(intensity_w_cm2 / kAtomicIntensityWcm2);
}

double field_to_intensity(double field_au) { return field_au * field_au * kAtomicIntensityWcm2; }

double convert_time(double value, TimeUnit from, TimeUnit to) {
  if (from == to) return value;
  return from == TimeUnit::atomic ? au_time_to_as(value) : as_to_au_time(value);
}

std::string_view to_string(TimeUnit unit) {
  return unit == TimeUnit::atomic ? "au" : "as";
}

TimeUnit parse_time_unit(std::string_view text) {
  if (text == "au") return TimeUnit::atomic;
  if (text == "as") return TimeUnit::attosecond;
  throw ParseError("unknown time unit '" + std::string(text) + "' (expected au or as)");
}

}  // namespace attoclock::units
