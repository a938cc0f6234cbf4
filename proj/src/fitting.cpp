#include "attoclock/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "attoclock/errors.hpp"
#include "attoclock/grid.hpp"
#include "textio.hpp"

namespace attoclock {

using json = nlohmann::ordered_json;

std::string_view to_string(FitBasis basis) {
  return basis == FitBasis::inv_f ? "inv_f" : "inv_f_offset";
}

FitBasis parse_fit_basis(std::string_view text) {
  if (text == "inv_f") return FitBasis::inv_f;
  if (text == "inv_f_offset") return FitBasis::inv_f_offset;
  throw ParseError("unknown fit basis '" + std::string(text) + "' (expected inv_f or inv_f_offset)");
}

std::size_t parameter_count(FitBasis basis) { return basis == FitBasis::inv_f ? 1 : 2; }

namespace {

bool is_weighted(const Dataset& ds) {
  return std::all_of(ds.samples.begin(), ds.samples.end(),
                     [](const Sample& s) { return s.sigma && *s.sigma > 0.0; });
}

std::vector<double> weights_of(const Dataset& ds) {
  std::vector<double> w(ds.samples.size(), 1.0);
  if (is_weighted(ds)) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double s = *ds.samples[i].sigma;
      w[i] = 1.0 / (s * s);
    }
  }
  return w;
}

}  // namespace

double weighted_rss(const Dataset& ds, double a, double b) {
  const auto w = weights_of(ds);
  double rss = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& s = ds.samples[i];
    const double r = s.delay - (a / s.f + b);
    rss += w[i] * r * r;
  }
  return rss;
}

FitResult fit(const Dataset& ds, FitBasis basis) {
  const std::size_t n = ds.samples.size();
  const std::size_t p = parameter_count(basis);
  if (n < std::max<std::size_t>(2, p)) {
    throw InsufficientData("fit needs at least " + std::to_string(std::max<std::size_t>(2, p)) +
                           " samples, dataset '" + ds.label + "' has " + std::to_string(n));
  }
  const auto range = field_range(ds);
  if (range.min == range.max) {
    throw SingularFit("all samples share F = " + textio::format_short(range.min) +
                      "; the 1/F regressor is degenerate");
  }

  const auto w = weights_of(ds);
  FitResult fr;
  fr.basis = basis;
  fr.weighted = is_weighted(ds);
  fr.time_unit = ds.time_unit;
  fr.f_min = range.min;
  fr.f_max = range.max;
  fr.dof = static_cast<int>(n - p);

  double unscaled_aa = 0, unscaled_ab = 0, unscaled_bb = 0;
  if (basis == FitBasis::inv_f) {
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 1.0 / ds.samples[i].f;
      sxx += w[i] * x * x;
      sxy += w[i] * x * ds.samples[i].delay;
    }
    fr.a = sxy / sxx;
    fr.b = 0;
    unscaled_aa = 1.0 / sxx;
  } else {
    // Centre the regressor before forming the normal equations; the raw
    // {1/F, 1} normal matrix is badly conditioned for narrow F ranges.
    double sw = 0, swx = 0, swy = 0, swxx_raw = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 1.0 / ds.samples[i].f;
      sw += w[i];
      swx += w[i] * x;
      swy += w[i] * ds.samples[i].delay;
      swxx_raw += w[i] * x * x;
    }
    const double x_bar = swx / sw;
    const double y_bar = swy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = 1.0 / ds.samples[i].f - x_bar;
      sxx += w[i] * dx * dx;
      sxy += w[i] * dx * (ds.samples[i].delay - y_bar);
    }
    if (!(sxx > 64 * std::numeric_limits<double>::epsilon() * swxx_raw)) {
      throw SingularFit("the 1/F regressor is numerically collinear with the offset");
    }
    fr.a = sxy / sxx;
    fr.b = y_bar - fr.a * x_bar;
    unscaled_aa = 1.0 / sxx;
    unscaled_ab = -x_bar / sxx;
    unscaled_bb = 1.0 / sw + x_bar * x_bar / sxx;
  }

  fr.rss = weighted_rss(ds, fr.a, fr.b);

  double scale = 1.0;
  if (!fr.weighted) {
    scale = fr.dof > 0 ? fr.rss / fr.dof : std::numeric_limits<double>::quiet_NaN();
  }
  if (p == 1) {
    fr.covariance = {scale * unscaled_aa};
  } else {
    fr.covariance = {scale * unscaled_aa, scale * unscaled_ab, scale * unscaled_ab, scale * unscaled_bb};
  }
  return fr;
}

Curve eval_curve(const FitResult& fr, std::span<const double> f_grid) {
  require_valid_grid(f_grid);
  Curve c;
  c.time_unit = fr.time_unit;
  c.f_grid.assign(f_grid.begin(), f_grid.end());
  c.values.reserve(f_grid.size());
  c.extrapolated.reserve(f_grid.size());
  for (const double f : f_grid) {
    c.values.push_back(fr(f));
    c.extrapolated.push_back(f < fr.f_min || f > fr.f_max);
  }
  return c;
}

Curve subtract_curves(const Curve& minuend, const Curve& subtrahend) {
  if (minuend.f_grid != subtrahend.f_grid) {
    throw GridMismatch("curves are evaluated on different field grids");
  }
  if (minuend.time_unit != subtrahend.time_unit) {
    throw UnitMismatch("cannot subtract a curve in " + std::string(units::to_string(subtrahend.time_unit)) +
                       " from one in " + std::string(units::to_string(minuend.time_unit)));
  }
  Curve out = minuend;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] = minuend.values[i] - subtrahend.values[i];
    out.extrapolated[i] = minuend.extrapolated[i] || subtrahend.extrapolated[i];
  }
  return out;
}

Curve convert_time_unit(Curve curve, TimeUnit unit) {
  for (auto& v : curve.values) v = units::convert_time(v, curve.time_unit, unit);
  curve.time_unit = unit;
  return curve;
}

std::string format_fit_json(const FitResult& fr) {
  json j;
  j["basis"] = std::string(to_string(fr.basis));
  j["a"] = fr.a;
  j["b"] = fr.b;
  j["covariance"] = fr.covariance;  // NaN is emitted as null
  j["rss"] = fr.rss;
  j["dof"] = fr.dof;
  j["f_min"] = fr.f_min;
  j["f_max"] = fr.f_max;
  j["time_unit"] = std::string(units::to_string(fr.time_unit));
  j["weighted"] = fr.weighted;
  return j.dump(2) + "\n";
}

FitResult parse_fit_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("fit result is not valid JSON: ") + e.what());
  }
  try {
    FitResult fr;
    fr.basis = parse_fit_basis(j.at("basis").get<std::string>());
    fr.a = j.at("a").get<double>();
    fr.b = j.at("b").get<double>();
    for (const auto& v : j.at("covariance")) {
      fr.covariance.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
    }
    const auto p = parameter_count(fr.basis);
    if (fr.covariance.size() != p * p) throw ParseError("covariance has the wrong number of entries");
    fr.rss = j.at("rss").get<double>();
    fr.dof = j.at("dof").get<int>();
    fr.f_min = j.at("f_min").get<double>();
    fr.f_max = j.at("f_max").get<double>();
    fr.time_unit = units::parse_time_unit(j.at("time_unit").get<std::string>());
    fr.weighted = j.value("weighted", false);
    return fr;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed fit result: ") + e.what());
  }
}

void write_fit(const FitResult& fr, const std::filesystem::path& path) {
  textio::write_file(path, format_fit_json(fr));
}

FitResult read_fit(const std::filesystem::path& path) {
  std::string text;
  for (const auto& line : textio::read_lines(path)) text += line + "\n";
  return parse_fit_json(text);
}

std::string format_curve(const Curve& curve) {
  std::string out = "# time_unit: " + std::string(units::to_string(curve.time_unit)) + "\n";
  out += "f_au,value,extrapolated\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += textio::format_g17(curve.f_grid[i]);
    out += ',';
    out += textio::format_g17(curve.values[i]);
    out += curve.extrapolated[i] ? ",1\n" : ",0\n";
  }
  return out;
}

Curve parse_curve(std::string_view text) {
  Curve c;
  c.time_unit = TimeUnit::attosecond;
  bool have_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = textio::trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (const auto d = textio::parse_directive(line); d && d->key == "time_unit") {
        try {
          c.time_unit = units::parse_time_unit(d->value);
        } catch (const ParseError& e) {
          throw ParseError(line_no, e.what());
        }
      }
      continue;
    }
    const auto cells = textio::split(line);
    if (!have_header) {
      if (cells.size() != 3 || cells[0] != "f_au" || cells[1] != "value" || cells[2] != "extrapolated") {
        throw ParseError(line_no, "missing header 'f_au,value,extrapolated'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != 3) throw ParseError(line_no, "expected 3 columns");
    const auto f = textio::parse_double(cells[0]);
    const auto v = textio::parse_double(cells[1]);
    if (!f) throw ParseError(line_no, "non-numeric field '" + std::string(cells[0]) + "'");
    if (!v) throw ParseError(line_no, "non-numeric value '" + std::string(cells[1]) + "'");
    if (cells[2] != "0" && cells[2] != "1") throw ParseError(line_no, "extrapolated flag must be 0 or 1");
    c.f_grid.push_back(*f);
    c.values.push_back(*v);
    c.extrapolated.push_back(cells[2] == "1");
  }
  if (!have_header) throw ParseError(line_no, "missing header 'f_au,value,extrapolated'");
  if (c.f_grid.empty()) throw EmptyDataset("curve has no points");
  try {
    require_valid_grid(c.f_grid);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return c;
}

void write_curve(const Curve& curve, const std::filesystem::path& path) {
  textio::write_file(path, format_curve(curve));
}

Curve read_curve(const std::filesystem::path& path) {
  std::string text;
  for (const auto& line : textio::read_lines(path)) text += line + "\n";
  return parse_curve(text);
}

}  // namespace attoclock
