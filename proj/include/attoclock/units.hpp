#pragma once

#include <string>
#include <string_view>

namespace attoclock {

enum class TimeUnit { atomic, attosecond };
enum class FieldUnit { atomic, intensity_w_cm2 };

struct UnitSystem {
  TimeUnit time_unit = TimeUnit::atomic;
  FieldUnit field_unit = FieldUnit::atomic;
};

namespace units {

// Attoseconds per atomic unit of time (CODATA 2018).
inline constexpr double kAttosecondsPerAtomicTime = 24.188843265857;
// Intensity in W/cm^2 whose peak field is one atomic unit.
inline constexpr double kAtomicIntensityWcm2 = 3.50944506e16;

double au_time_to_as(double t_au);
double as_to_au_time(double t_as);

// Throws DomainError for negative intensity.
double intensity_to_field(double intensity_w_cm2);
double field_to_intensity(double field_au);

// Rescales a time value between units. Identity when from == to.
double convert_time(double value, TimeUnit from, TimeUnit to);

// "au" / "as"
std::string_view to_string(TimeUnit unit);
// Accepts "au" and "as"; throws ParseError otherwise.
TimeUnit parse_time_unit(std::string_view text);

}  // namespace units
}  // namespace attoclock
