#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace attoclock {

enum class GridScale { linear, log };

// n points from f_min to f_max inclusive; both endpoints are reproduced exactly.
// Throws DomainError unless 0 < f_min < f_max and n >= 2.
std::vector<double> make_grid(double f_min, double f_max, std::size_t n, GridScale scale);

// Throws DomainError unless every point is finite, positive and strictly increasing.
void require_valid_grid(std::span<const double> f_grid);

}  // namespace attoclock
