#include "attoclock/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "attoclock/errors.hpp"
#include "textio.hpp"

namespace attoclock::plot {

namespace {

constexpr const char* kPalette[] = {"#d62728", "#2ca02c", "#1f77b4", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span, int target) {
  const double raw = span / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return step * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return !(lo <= hi); }
};

// Pads a degenerate range and snaps the ends outward to tick multiples.
Range snap(Range r, int target) {
  if (r.lo == r.hi) {
    const double pad = r.lo == 0.0 ? 1.0 : 0.1 * std::abs(r.lo);
    r.lo -= pad;
    r.hi += pad;
  }
  const double step = nice_step(r.hi - r.lo, target);
  return {std::floor(r.lo / step) * step, std::ceil(r.hi / step) * step};
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  std::vector<double> ticks;
  if (!(hi > lo)) return ticks;
  const double step = nice_step(hi - lo, target);
  const double first = std::ceil(lo / step - 1e-9);
  for (double k = first; k * step <= hi + 1e-9 * step; k += 1.0) {
    const double t = k * step;
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::string render_svg(std::span<const Series> series, const Options& options) {
  Range xr, yr;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.f.size(); ++i) {
      if (!std::isfinite(s.f[i]) || !std::isfinite(s.values[i])) continue;
      xr.add(s.f[i]);
      yr.add(s.values[i]);
    }
  }
  if (xr.empty()) throw DomainError("nothing to plot: no finite points");
  xr = snap(xr, 6);
  yr = snap(yr, 5);

  const double w = options.width, h = options.height;
  const double left = 80, right = 20, top = options.title.empty() ? 20 : 40, bottom = 60;
  const double pw = w - left - right, ph = h - top - bottom;
  auto px = [&](double f) { return left + (f - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double v) { return top + (yr.hi - v) / (yr.hi - yr.lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
         std::to_string(options.height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + escape(options.title) + "</text>\n";
  }

  // Axes, ticks and labels.
  out += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
         num(top + ph) + "\"/>\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + ph) +
         "\"/>\n";
  for (const double t : nice_ticks(xr.lo, xr.hi, 6)) {
    out += "<line x1=\"" + num(px(t)) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(px(t)) + "\" y2=\"" +
           num(top + ph + 5) + "\"/>\n";
  }
  for (const double t : nice_ticks(yr.lo, yr.hi, 5)) {
    out += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(left) + "\" y2=\"" +
           num(py(t)) + "\"/>\n";
  }
  out += "</g>\n";

  out += "<g class=\"tick-labels\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (const double t : nice_ticks(xr.lo, xr.hi, 6)) {
    out += "<text x=\"" + num(px(t)) + "\" y=\"" + num(top + ph + 20) + "\" text-anchor=\"middle\">" +
           textio::format_short(t) + "</text>\n";
  }
  for (const double t : nice_ticks(yr.lo, yr.hi, 5)) {
    out += "<text x=\"" + num(left - 8) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" +
           textio::format_short(t) + "</text>\n";
  }
  out += "</g>\n";

  out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(h - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">F (au)</text>\n";
  out += "<text x=\"20\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 20 " + num(top + ph / 2) + ")\">delay (" +
         std::string(units::to_string(options.time_unit)) + ")</text>\n";

  // Series.
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color = kPalette[k % std::size(kPalette)];
    out += "<g class=\"series\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\">\n";

    auto finite = [&](std::size_t i) { return std::isfinite(s.f[i]) && std::isfinite(s.values[i]); };
    auto point = [&](std::size_t i) { return num(px(s.f[i])) + "," + num(py(s.values[i])); };
    auto flush = [&](const std::vector<std::size_t>& idx, bool dashed) {
      if (idx.size() < 2) return;
      out += "<polyline points=\"";
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (j) out += ' ';
        out += point(idx[j]);
      }
      out += dashed ? "\" stroke-dasharray=\"6 4\"/>\n" : "\"/>\n";
    };

    std::vector<std::size_t> run;
    bool run_dashed = false;
    std::size_t drawn_intervals = 0;
    for (std::size_t i = 0; i + 1 < s.f.size(); ++i) {
      if (!finite(i) || !finite(i + 1)) {
        flush(run, run_dashed);
        run.clear();
        continue;
      }
      const bool dashed = s.extrapolated[i] || s.extrapolated[i + 1];
      if (!run.empty() && dashed != run_dashed) {
        flush(run, run_dashed);
        run = {i};
      }
      if (run.empty()) run.push_back(i);
      run_dashed = dashed;
      run.push_back(i + 1);
      ++drawn_intervals;
    }
    flush(run, run_dashed);

    if (drawn_intervals == 0) {
      for (std::size_t i = 0; i < s.f.size(); ++i) {
        if (!finite(i)) continue;
        out += "<circle cx=\"" + num(px(s.f[i])) + "\" cy=\"" + num(py(s.values[i])) + "\" r=\"3\" fill=\"" +
               color + "\"/>\n";
      }
    }
    out += "</g>\n";
  }

  // Legend, in input order.
  out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double y = top + 15 + 18.0 * static_cast<double>(k);
    const double x = left + pw - 170;
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x + 25) + "\" y2=\"" + num(y) +
           "\" stroke=\"" + kPalette[k % std::size(kPalette)] + "\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + num(x + 32) + "\" y=\"" + num(y + 4) + "\">" + escape(series[k].label) + "</text>\n";
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

Table parse_table(std::string_view text, std::string_view label, std::span<const std::string> columns) {
  Table table;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
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
          table.time_unit = units::parse_time_unit(d->value);
        } catch (const ParseError& e) {
          throw ParseError(line_no, e.what());
        }
      }
      continue;
    }
    const auto cells = textio::split(line);
    if (header.empty()) {
      if (cells.size() < 2 || cells[0] != "f_au") throw ParseError(line_no, "header must start with f_au");
      for (const auto c : cells) header.emplace_back(c);
      continue;
    }
    if (cells.size() != header.size()) throw ParseError(line_no, "column count does not match header");
    std::vector<double> row;
    for (const auto c : cells) {
      const auto v = textio::parse_double(c);
      if (!v) throw ParseError(line_no, "non-numeric cell '" + std::string(c) + "'");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (header.empty()) throw ParseError(line_no, "missing header");
  if (rows.empty()) throw EmptyDataset("table has no rows");

  const bool is_curve = header.size() == 3 && header[1] == "value" && header[2] == "extrapolated";
  auto column_series = [&](std::size_t col, std::string name, bool with_mask) {
    Series s;
    s.label = std::move(name);
    for (const auto& row : rows) {
      s.f.push_back(row[0]);
      s.values.push_back(row[col]);
      s.extrapolated.push_back(with_mask && row[2] != 0.0);
    }
    return s;
  };

  if (is_curve) {
    table.series.push_back(column_series(1, std::string(label), true));
    return table;
  }

  std::vector<std::size_t> picked;
  if (!columns.empty()) {
    for (const auto& name : columns) {
      const auto it = std::find(header.begin() + 1, header.end(), name);
      if (it == header.end()) throw ParseError("column '" + name + "' not found");
      picked.push_back(static_cast<std::size_t>(it - header.begin()));
    }
  } else {
    for (std::size_t c = 1; c < header.size(); ++c) {
      if (header[c].rfind("tau_", 0) == 0) picked.push_back(c);
    }
    if (picked.empty()) {
      for (std::size_t c = 1; c < header.size(); ++c) picked.push_back(c);
    }
  }
  for (const auto c : picked) table.series.push_back(column_series(c, header[c], false));
  return table;
}

Table read_table(const std::filesystem::path& path, std::string_view label, std::span<const std::string> columns) {
  std::string text;
  for (const auto& line : textio::read_lines(path)) text += line + "\n";
  return parse_table(text, label, columns);
}

}  // namespace attoclock::plot
