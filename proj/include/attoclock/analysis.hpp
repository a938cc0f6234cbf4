#pragma once

// Barrier-delay extraction from adiabatic/nonadiabatic delay data and its
// comparison with the model for a sweep of effective charges.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "attoclock/dataset.hpp"
#include "attoclock/fitting.hpp"
#include "attoclock/model.hpp"

namespace attoclock {

struct LabeledCurve {
  std::string label;
  Curve curve;
  // Grid points above the curve's own F_a: value NaN, flagged extrapolated.
  std::size_t dropped = 0;
};

struct BarrierExtraction {
  FitResult adiabatic_fit;
  FitResult nonadiabatic_fit;
  Curve adiabatic_curve;
  Curve nonadiabatic_curve;
  Curve barrier;  // adiabatic - nonadiabatic
};

// Fits both datasets (the nonadiabatic one is first converted to the
// adiabatic dataset's time unit), evaluates them on f_grid and subtracts.
BarrierExtraction extract_barrier(const Dataset& adiabatic, const Dataset& nonadiabatic, FitBasis basis,
                                  std::span<const double> f_grid);
Curve barrier_extraction(const Dataset& adiabatic, const Dataset& nonadiabatic, FitBasis basis,
                         std::span<const double> f_grid);

// Exact model evaluation on a grid, no fitting involved. Points above F_a
// are NaN and flagged; throws DomainError when no point survives.
LabeledCurve model_curve(const AtomicSystem& sys, DelayModel model, std::span<const double> f_grid,
                         TimeUnit unit = TimeUnit::atomic);

// tau_dB(F; I_p, z) for each z at fixed I_p, labelled "Z_eff=<z>".
std::vector<LabeledCurve> model_sweep(const AtomicSystem& base, std::span<const double> z_list,
                                      std::span<const double> f_grid, TimeUnit unit = TimeUnit::atomic);

std::string sweep_label(double z_eff);

struct CurveMetrics {
  std::string label;
  double rmse = 0;
  double max_abs = 0;
  double max_rel = 0;  // relative to |barrier_exp|, over points where it is nonzero
  double f_at_max = 0;
  std::size_t n_points = 0;
};

// Qualitative checks of the experimental comparison: the extracted barrier
// delay sits between the model curves, and its distance to the Larmor-clock
// curve shrinks toward small F.
struct ReproductionCheck {
  bool barrier_between_models = false;
  std::size_t points_between = 0;
  std::size_t points_checked = 0;
  bool lc_gap_decreasing = false;
  double lc_gap_low_f = 0;   // mean |barrier - lc| over the lower half of usable points
  double lc_gap_high_f = 0;  // same over the upper half

  bool passed() const noexcept { return barrier_between_models && lc_gap_decreasing; }
};

struct CompareOptions {
  bool allow_extrapolation = false;
};

struct ComparisonReport {
  std::vector<double> f_grid;
  Curve barrier_exp;
  std::vector<LabeledCurve> model_curves;
  std::optional<Curve> lc_curve;
  std::vector<CurveMetrics> metrics;  // one per model curve, same order
  std::optional<CurveMetrics> lc_metrics;
  std::optional<double> crossover_f;
  // Present when an LC curve and at least two model curves are supplied.
  std::optional<ReproductionCheck> reproduction;
  bool allow_extrapolation = false;
};

// Model and LC curves are converted to barrier_exp's time unit. Points count
// toward a metric only when both curves are finite there and (unless
// allow_extrapolation) neither is flagged. Throws GridMismatch when grids
// differ or a curve shares no usable point with barrier_exp.
ComparisonReport compare(const Curve& barrier_exp, std::vector<LabeledCurve> model_curves,
                         std::optional<Curve> lc_curve = std::nullopt, CompareOptions options = {});

struct LimitRow {
  double f = 0;
  double lambda = 0;            // tau_dB / tau_dion
  double backreaction_gap = 0;  // |tau_T,i - 1/(4 I_p)|
  // tau_dB / d_B; undefined at F_a where both vanish.
  std::optional<double> tau_db_per_width;
  bool thick_barrier = false;   // lambda > 0.99
};

struct LimitReport {
  double tau_a = 0;
  double backreaction = 0;  // 1 / (4 I_p)
  double width_slope = 0;   // 1 / (8 Z_eff)
  std::vector<LimitRow> rows;
};

inline constexpr double kThickBarrierLambda = 0.99;

LimitReport limit_report(const AtomicSystem& sys, std::span<const double> f_grid);

std::string format_report_json(const ComparisonReport& report);

// Writes report.json, manifest.json (label -> file) and one curve CSV per
// labelled curve into `dir`, creating it if needed. Throws IoError.
void write_report_bundle(const ComparisonReport& report, const std::filesystem::path& dir);

}  // namespace attoclock
