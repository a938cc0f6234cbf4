#pragma once

// Weighted linear least squares in the {1/F, 1} basis, evaluation of the
// fitted curves on field grids, and pointwise curve subtraction.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attoclock/dataset.hpp"
#include "attoclock/units.hpp"

namespace attoclock {

// inv_f: delay = a/F.  inv_f_offset: delay = a/F + b.
enum class FitBasis { inv_f, inv_f_offset };

std::string_view to_string(FitBasis basis);
FitBasis parse_fit_basis(std::string_view text);
std::size_t parameter_count(FitBasis basis);

struct FitResult {
  FitBasis basis = FitBasis::inv_f_offset;
  double a = 0;  // coefficient of 1/F, time x field
  double b = 0;  // offset, always 0 for inv_f
  // Row-major, parameter_count(basis) squared entries, ordered (a, b).
  // NaN when an unweighted fit has no residual degrees of freedom.
  std::vector<double> covariance;
  double rss = 0;  // weighted when the fit is weighted
  int dof = 0;
  double f_min = 0;
  double f_max = 0;
  TimeUnit time_unit = TimeUnit::attosecond;
  bool weighted = false;

  double operator()(double f) const noexcept { return a / f + b; }
  double var_a() const { return covariance.front(); }
  double var_b() const { return basis == FitBasis::inv_f ? 0.0 : covariance.back(); }

  friend bool operator==(const FitResult&, const FitResult&) = default;
};

// Weighted iff every sample has sigma > 0 (w = 1/sigma^2); otherwise all
// weights are 1 and the covariance is scaled by rss/dof.
// Throws InsufficientData (fewer than 2 samples or than parameters) and
// SingularFit (all F identical).
FitResult fit(const Dataset& ds, FitBasis basis = FitBasis::inv_f_offset);

// Objective minimized by fit() evaluated at arbitrary coefficients.
double weighted_rss(const Dataset& ds, double a, double b);

struct Curve {
  std::vector<double> f_grid;
  std::vector<double> values;
  TimeUnit time_unit = TimeUnit::atomic;
  // True where the point lies outside the range of the data behind it.
  std::vector<bool> extrapolated;

  std::size_t size() const noexcept { return f_grid.size(); }

  friend bool operator==(const Curve&, const Curve&) = default;
};

// Throws DomainError for empty, nonpositive or non-increasing grids.
Curve eval_curve(const FitResult& fr, std::span<const double> f_grid);

// minuend - subtrahend; masks are OR-ed.
// Throws GridMismatch unless the grids are identical, UnitMismatch on differing units.
Curve subtract_curves(const Curve& minuend, const Curve& subtrahend);

Curve convert_time_unit(Curve curve, TimeUnit unit);

std::string format_fit_json(const FitResult& fr);
FitResult parse_fit_json(std::string_view text);
void write_fit(const FitResult& fr, const std::filesystem::path& path);
FitResult read_fit(const std::filesystem::path& path);

// "# time_unit: <u>" directive, then "f_au,value,extrapolated" with 0/1 flags.
std::string format_curve(const Curve& curve);
Curve parse_curve(std::string_view text);
void write_curve(const Curve& curve, const std::filesystem::path& path);
Curve read_curve(const std::filesystem::path& path);

}  // namespace attoclock
