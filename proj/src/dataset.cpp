#include "attoclock/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "attoclock/errors.hpp"
#include "textio.hpp"

namespace attoclock {

std::string_view to_string(Calibration calibration) {
  switch (calibration) {
    case Calibration::adiabatic: return "adiabatic";
    case Calibration::nonadiabatic: return "nonadiabatic";
    case Calibration::larmor_clock: return "larmor_clock";
    case Calibration::synthetic: return "synthetic";
  }
  return "adiabatic";
}

Calibration parse_calibration(std::string_view text) {
  for (auto c : {Calibration::adiabatic, Calibration::nonadiabatic, Calibration::larmor_clock,
                 Calibration::synthetic}) {
    if (text == to_string(c)) return c;
  }
  throw ParseError("unknown calibration '" + std::string(text) + "'");
}

std::string_view to_string(DelayModel model) {
  switch (model) {
    case DelayModel::adiabatic_model: return "adiabatic";
    case DelayModel::nonadiabatic_model: return "nonadiabatic";
    case DelayModel::barrier_model: return "barrier";
  }
  return "adiabatic";
}

DelayModel parse_delay_model(std::string_view text) {
  for (auto m : {DelayModel::adiabatic_model, DelayModel::nonadiabatic_model,
                 DelayModel::barrier_model}) {
    if (text == to_string(m)) return m;
  }
  throw ParseError("unknown model '" + std::string(text) + "' (expected adiabatic, nonadiabatic or barrier)");
}

FieldRange field_range(const Dataset& ds) {
  if (ds.samples.empty()) throw EmptyDataset("dataset '" + ds.label + "' has no samples");
  const auto [lo, hi] = std::minmax_element(ds.samples.begin(), ds.samples.end(),
                                            [](const Sample& a, const Sample& b) { return a.f < b.f; });
  return {lo->f, hi->f};
}

Dataset convert_time_unit(Dataset ds, TimeUnit unit) {
  if (ds.time_unit == unit) return ds;
  for (auto& s : ds.samples) {
    s.delay = units::convert_time(s.delay, ds.time_unit, unit);
    if (s.sigma) *s.sigma = units::convert_time(*s.sigma, ds.time_unit, unit);
  }
  ds.time_unit = unit;
  return ds;
}

namespace {

bool apply_directive(Dataset& ds, std::string_view line, std::size_t line_no) {
  const auto d = textio::parse_directive(line);
  if (!d) return false;
  try {
    if (d->key == "time_unit") {
      ds.time_unit = units::parse_time_unit(d->value);
    } else if (d->key == "calibration") {
      ds.calibration = parse_calibration(d->value);
    } else if (d->key == "label") {
      ds.label = d->value;
    } else {
      return false;
    }
  } catch (const ParseError& e) {
    throw ParseError(line_no, e.what());
  }
  return true;
}

}  // namespace

Dataset parse_dataset(std::string_view text) {
  Dataset ds;
  bool have_header = false;
  bool have_sigma = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = textio::trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      apply_directive(ds, line, line_no);
      continue;
    }

    const auto cells = textio::split(line);
    if (!have_header) {
      const bool two = cells.size() == 2 && cells[0] == "f_au" && cells[1] == "delay";
      const bool three = cells.size() == 3 && cells[0] == "f_au" && cells[1] == "delay" && cells[2] == "sigma";
      if (!two && !three) throw ParseError(line_no, "missing header 'f_au,delay[,sigma]'");
      have_header = true;
      have_sigma = three;
      continue;
    }

    const std::size_t expected = have_sigma ? 3 : 2;
    if (cells.size() != expected) {
      throw ParseError(line_no, "expected " + std::to_string(expected) + " columns, found " +
                                    std::to_string(cells.size()));
    }
    const auto f = textio::parse_double(cells[0]);
    const auto delay = textio::parse_double(cells[1]);
    if (!f || !std::isfinite(*f)) throw ParseError(line_no, "non-numeric field '" + std::string(cells[0]) + "'");
    if (!delay || !std::isfinite(*delay)) {
      throw ParseError(line_no, "non-numeric delay '" + std::string(cells[1]) + "'");
    }
    if (*f <= 0.0) throw ParseError(line_no, "field strength must be positive");

    Sample s{*f, *delay, std::nullopt};
    if (have_sigma && !cells[2].empty()) {
      const auto sigma = textio::parse_double(cells[2]);
      if (!sigma || !std::isfinite(*sigma)) {
        throw ParseError(line_no, "non-numeric sigma '" + std::string(cells[2]) + "'");
      }
      if (*sigma < 0.0) throw ParseError(line_no, "sigma must be nonnegative");
      s.sigma = *sigma;
    }
    ds.samples.push_back(s);
  }

  if (!have_header) throw ParseError(line_no, "missing header 'f_au,delay[,sigma]'");
  if (ds.samples.empty()) throw EmptyDataset("dataset has a header but no rows");
  return ds;
}

std::string format_dataset(const Dataset& ds) {
  if (ds.samples.empty()) throw EmptyDataset("refusing to write a dataset without samples");
  const bool have_sigma = std::any_of(ds.samples.begin(), ds.samples.end(),
                                      [](const Sample& s) { return s.sigma.has_value(); });
  std::string out;
  if (!ds.label.empty()) {
    std::string label = ds.label;
    std::replace(label.begin(), label.end(), '\n', ' ');
    std::replace(label.begin(), label.end(), '\r', ' ');
    out += "# label: " + std::string(textio::trim(label)) + "\n";
  }
  out += "# calibration: " + std::string(to_string(ds.calibration)) + "\n";
  out += "# time_unit: " + std::string(units::to_string(ds.time_unit)) + "\n";
  out += have_sigma ? "f_au,delay,sigma\n" : "f_au,delay\n";
  for (const auto& s : ds.samples) {
    out += textio::format_g17(s.f);
    out += ',';
    out += textio::format_g17(s.delay);
    if (have_sigma) {
      out += ',';
      if (s.sigma) out += textio::format_g17(*s.sigma);
    }
    out += '\n';
  }
  return out;
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::string text;
  for (const auto& line : textio::read_lines(path)) {
    text += line;
    text += '\n';
  }
  return parse_dataset(text);
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
  textio::write_file(path, format_dataset(ds));
}

Dataset synth_dataset(const AtomicSystem& sys, DelayModel model, std::span<const double> f_grid,
                      double noise_sigma, std::uint64_t seed, TimeUnit unit) {
  if (f_grid.empty()) throw DomainError("synthesis grid is empty");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw DomainError("noise sigma must be nonnegative");
  }

  Dataset ds;
  ds.calibration = Calibration::synthetic;
  ds.time_unit = unit;
  ds.label = "synthetic " + std::string(to_string(model)) + " (ip=" + textio::format_short(sys.ip()) +
             ", z_eff=" + textio::format_short(sys.z_eff()) + ")";

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  ds.samples.reserve(f_grid.size());
  for (const double f : f_grid) {
    double tau = 0;
    switch (model) {
      case DelayModel::adiabatic_model: tau = adiabatic_delay(sys, f); break;
      case DelayModel::nonadiabatic_model: tau = nonadiabatic_delay(sys, f); break;
      case DelayModel::barrier_model: tau = barrier_delay(sys, f); break;
    }
    double delay = units::convert_time(tau, TimeUnit::atomic, unit);
    if (noise_sigma > 0.0) delay += noise_sigma * noise(rng);
    ds.samples.push_back({f, delay, noise_sigma});
  }
  return ds;
}

}  // namespace attoclock
