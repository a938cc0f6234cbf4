#include "attoclock/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "attoclock/errors.hpp"
#include "attoclock/grid.hpp"
#include "textio.hpp"

namespace attoclock {

using json = nlohmann::ordered_json;

BarrierExtraction extract_barrier(const Dataset& adiabatic, const Dataset& nonadiabatic, FitBasis basis,
                                  std::span<const double> f_grid) {
  BarrierExtraction out;
  out.adiabatic_fit = fit(adiabatic, basis);
  out.nonadiabatic_fit = fit(convert_time_unit(nonadiabatic, adiabatic.time_unit), basis);
  out.adiabatic_curve = eval_curve(out.adiabatic_fit, f_grid);
  out.nonadiabatic_curve = eval_curve(out.nonadiabatic_fit, f_grid);
  out.barrier = subtract_curves(out.adiabatic_curve, out.nonadiabatic_curve);
  return out;
}

Curve barrier_extraction(const Dataset& adiabatic, const Dataset& nonadiabatic, FitBasis basis,
                         std::span<const double> f_grid) {
  return extract_barrier(adiabatic, nonadiabatic, basis, f_grid).barrier;
}

LabeledCurve model_curve(const AtomicSystem& sys, DelayModel model, std::span<const double> f_grid,
                         TimeUnit unit) {
  require_valid_grid(f_grid);
  const double f_a = atomic_field_strength(sys);

  LabeledCurve lc;
  lc.label = std::string(to_string(model));
  lc.curve.time_unit = unit;
  lc.curve.f_grid.assign(f_grid.begin(), f_grid.end());
  for (const double f : f_grid) {
    if (f > f_a) {
      lc.curve.values.push_back(std::numeric_limits<double>::quiet_NaN());
      lc.curve.extrapolated.push_back(true);
      ++lc.dropped;
      continue;
    }
    double tau = 0;
    switch (model) {
      case DelayModel::adiabatic_model: tau = adiabatic_delay(sys, f); break;
      case DelayModel::nonadiabatic_model: tau = nonadiabatic_delay(sys, f); break;
      case DelayModel::barrier_model: tau = barrier_delay(sys, f); break;
    }
    lc.curve.values.push_back(units::convert_time(tau, TimeUnit::atomic, unit));
    lc.curve.extrapolated.push_back(false);
  }
  if (lc.dropped == f_grid.size()) {
    throw DomainError("every grid point exceeds the atomic field strength " + textio::format_short(f_a));
  }
  return lc;
}

std::string sweep_label(double z_eff) { return "Z_eff=" + textio::format_short(z_eff); }

std::vector<LabeledCurve> model_sweep(const AtomicSystem& base, std::span<const double> z_list,
                                      std::span<const double> f_grid, TimeUnit unit) {
  std::vector<LabeledCurve> curves;
  curves.reserve(z_list.size());
  for (const double z : z_list) {
    auto lc = model_curve(AtomicSystem(base.ip(), z), DelayModel::barrier_model, f_grid, unit);
    lc.label = sweep_label(z);
    curves.push_back(std::move(lc));
  }
  return curves;
}

namespace {

bool usable(const Curve& c, std::size_t i, bool allow_extrapolation) {
  return std::isfinite(c.values[i]) && (allow_extrapolation || !c.extrapolated[i]);
}

CurveMetrics metrics_against(const Curve& reference, const Curve& other, const std::string& label,
                             bool allow_extrapolation) {
  CurveMetrics m;
  m.label = label;
  double sum_sq = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (!usable(reference, i, allow_extrapolation) || !usable(other, i, allow_extrapolation)) continue;
    const double diff = std::abs(other.values[i] - reference.values[i]);
    sum_sq += diff * diff;
    ++m.n_points;
    if (diff > m.max_abs || m.n_points == 1) {
      m.max_abs = diff;
      m.f_at_max = reference.f_grid[i];
    }
    if (reference.values[i] != 0.0) m.max_rel = std::max(m.max_rel, diff / std::abs(reference.values[i]));
  }
  if (m.n_points == 0) {
    throw GridMismatch("curve '" + label + "' shares no valid point with the extracted barrier delay");
  }
  m.rmse = std::sqrt(sum_sq / static_cast<double>(m.n_points));
  return m;
}

void require_same_grid(const Curve& reference, const Curve& other, const std::string& label) {
  if (other.f_grid != reference.f_grid) {
    throw GridMismatch("curve '" + label + "' is not on the extracted barrier delay's grid");
  }
}

std::optional<double> find_crossover(const ComparisonReport& r) {
  if (r.model_curves.size() < 2) return std::nullopt;
  std::optional<std::size_t> previous;
  for (std::size_t i = 0; i < r.f_grid.size(); ++i) {
    if (!usable(r.barrier_exp, i, r.allow_extrapolation)) continue;
    bool all_usable = true;
    std::size_t best = 0;
    double best_diff = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < r.model_curves.size(); ++k) {
      const auto& c = r.model_curves[k].curve;
      if (!usable(c, i, r.allow_extrapolation)) {
        all_usable = false;
        break;
      }
      const double diff = std::abs(c.values[i] - r.barrier_exp.values[i]);
      if (diff < best_diff) {
        best_diff = diff;
        best = k;
      }
    }
    if (!all_usable) continue;
    if (previous && *previous != best) return r.f_grid[i];
    previous = best;
  }
  return std::nullopt;
}

ReproductionCheck assess_reproduction(const ComparisonReport& r) {
  ReproductionCheck check;
  const bool ext = r.allow_extrapolation;
  for (std::size_t i = 0; i < r.f_grid.size(); ++i) {
    if (!usable(r.barrier_exp, i, ext)) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool all_usable = true;
    for (const auto& m : r.model_curves) {
      if (!usable(m.curve, i, ext)) {
        all_usable = false;
        break;
      }
      lo = std::min(lo, m.curve.values[i]);
      hi = std::max(hi, m.curve.values[i]);
    }
    if (!all_usable) continue;
    ++check.points_checked;
    const double v = r.barrier_exp.values[i];
    if (v >= lo && v <= hi) ++check.points_between;
  }
  check.barrier_between_models = check.points_checked > 0 && check.points_between == check.points_checked;

  std::vector<double> gaps;
  for (std::size_t i = 0; i < r.f_grid.size(); ++i) {
    if (usable(r.barrier_exp, i, ext) && usable(*r.lc_curve, i, ext)) {
      gaps.push_back(std::abs(r.barrier_exp.values[i] - r.lc_curve->values[i]));
    }
  }
  if (gaps.size() >= 4) {
    const std::size_t half = gaps.size() / 2;
    double low = 0, high = 0;
    for (std::size_t i = 0; i < half; ++i) low += gaps[i];
    for (std::size_t i = gaps.size() - half; i < gaps.size(); ++i) high += gaps[i];
    check.lc_gap_low_f = low / static_cast<double>(half);
    check.lc_gap_high_f = high / static_cast<double>(half);
    check.lc_gap_decreasing = check.lc_gap_low_f < check.lc_gap_high_f;
  }
  return check;
}

}  // namespace

ComparisonReport compare(const Curve& barrier_exp, std::vector<LabeledCurve> model_curves,
                         std::optional<Curve> lc_curve, CompareOptions options) {
  ComparisonReport r;
  r.allow_extrapolation = options.allow_extrapolation;
  r.f_grid = barrier_exp.f_grid;
  r.barrier_exp = barrier_exp;

  for (auto& m : model_curves) {
    require_same_grid(barrier_exp, m.curve, m.label);
    m.curve = convert_time_unit(std::move(m.curve), barrier_exp.time_unit);
    r.metrics.push_back(metrics_against(barrier_exp, m.curve, m.label, options.allow_extrapolation));
  }
  r.model_curves = std::move(model_curves);

  if (lc_curve) {
    require_same_grid(barrier_exp, *lc_curve, "lc");
    r.lc_curve = convert_time_unit(std::move(*lc_curve), barrier_exp.time_unit);
    r.lc_metrics = metrics_against(barrier_exp, *r.lc_curve, "lc", options.allow_extrapolation);
  }

  r.crossover_f = find_crossover(r);
  if (r.lc_curve && r.model_curves.size() >= 2) r.reproduction = assess_reproduction(r);
  return r;
}

LimitReport limit_report(const AtomicSystem& sys, std::span<const double> f_grid) {
  require_valid_grid(f_grid);
  LimitReport report;
  report.tau_a = 1.0 / (2.0 * sys.ip());
  report.backreaction = weak_measurement_backreaction(sys);
  report.width_slope = 1.0 / (8.0 * sys.z_eff());
  for (const double f : f_grid) {
    const auto d = delay_breakdown(sys, f);
    const auto g = barrier_geometry(sys, f);
    LimitRow row;
    row.f = f;
    row.lambda = d.tau_db / d.tau_dion;
    row.backreaction_gap = std::abs(d.tau_ti - report.backreaction);
    if (g.d_b > 0.0) row.tau_db_per_width = d.tau_db / g.d_b;
    row.thick_barrier = row.lambda > kThickBarrierLambda;
    report.rows.push_back(row);
  }
  return report;
}

namespace {

json metrics_json(const CurveMetrics& m) {
  return json{{"label", m.label},       {"rmse", m.rmse},         {"max_abs", m.max_abs},
              {"max_rel", m.max_rel},   {"f_at_max", m.f_at_max}, {"n_points", m.n_points}};
}

std::string file_stem(const std::string& label) {
  std::string out;
  for (const char c : label) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
    out += keep ? c : '_';
  }
  return out;
}

}  // namespace

std::string format_report_json(const ComparisonReport& report) {
  json j;
  j["time_unit"] = std::string(units::to_string(report.barrier_exp.time_unit));
  j["n_points"] = report.f_grid.size();
  j["f_min"] = report.f_grid.empty() ? 0.0 : report.f_grid.front();
  j["f_max"] = report.f_grid.empty() ? 0.0 : report.f_grid.back();
  j["allow_extrapolation"] = report.allow_extrapolation;
  j["crossover_f"] = report.crossover_f ? json(*report.crossover_f) : json(nullptr);

  json metrics = json::array();
  for (const auto& m : report.metrics) metrics.push_back(metrics_json(m));
  j["metrics"] = std::move(metrics);
  j["lc_metrics"] = report.lc_metrics ? metrics_json(*report.lc_metrics) : json(nullptr);

  json dropped = json::object();
  for (const auto& m : report.model_curves) dropped[m.label] = m.dropped;
  j["dropped_points"] = std::move(dropped);

  if (report.reproduction) {
    const auto& c = *report.reproduction;
    j["reproduction"] = json{{"barrier_between_models", c.barrier_between_models},
                             {"points_between", c.points_between},
                             {"points_checked", c.points_checked},
                             {"lc_gap_decreasing", c.lc_gap_decreasing},
                             {"lc_gap_low_f", c.lc_gap_low_f},
                             {"lc_gap_high_f", c.lc_gap_high_f},
                             {"passed", c.passed()}};
  } else {
    j["reproduction"] = nullptr;
  }
  return j.dump(2) + "\n";
}

void write_report_bundle(const ComparisonReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

  json manifest = json::object();
  auto emit = [&](const std::string& label, const std::string& file, const Curve& curve) {
    write_curve(curve, dir / file);
    manifest[label] = file;
  };
  emit("barrier_exp", "barrier_exp.csv", report.barrier_exp);
  for (std::size_t i = 0; i < report.model_curves.size(); ++i) {
    const auto& m = report.model_curves[i];
    emit(m.label, "model_" + std::to_string(i) + "_" + file_stem(m.label) + ".csv", m.curve);
  }
  if (report.lc_curve) emit("lc", "lc.csv", *report.lc_curve);

  textio::write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  textio::write_file(dir / "report.json", format_report_json(report));
}

}  // namespace attoclock
