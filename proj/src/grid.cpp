#include "attoclock/grid.hpp"

#include <cmath>
#include <string>

#include "attoclock/errors.hpp"

namespace attoclock {

std::vector<double> make_grid(double f_min, double f_max, std::size_t n, GridScale scale) {
  if (!(f_min > 0.0) || !(f_max > f_min) || !std::isfinite(f_max)) {
    throw DomainError("grid requires 0 < f_min < f_max");
  }
  if (n < 2) throw DomainError("grid requires at least 2 points");

  std::vector<double> grid(n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / last;
    grid[i] = scale == GridScale::linear
                  ? f_min + t * (f_max - f_min)
                  : std::exp(std::log(f_min) + t * (std::log(f_max) - std::log(f_min)));
  }
  grid.front() = f_min;
  grid.back() = f_max;
  return grid;
}

void require_valid_grid(std::span<const double> f_grid) {
  if (f_grid.empty()) throw DomainError("field grid is empty");
  for (std::size_t i = 0; i < f_grid.size(); ++i) {
    if (!std::isfinite(f_grid[i]) || f_grid[i] <= 0.0) {
      throw DomainError("field grid point " + std::to_string(i) + " is not positive");
    }
    if (i > 0 && !(f_grid[i] > f_grid[i - 1])) {
      throw DomainError("field grid is not strictly increasing at point " + std::to_string(i));
    }
  }
}

}  // namespace attoclock
