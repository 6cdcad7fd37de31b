#pragma once

#include <cstddef>
#include <vector>

#include "polyent/zoo/system.hpp"

namespace polyent::lab {

// max_{0 <= j < n} d(f^j p, f^j q).
double bowen_distance(const zoo::DynSystem& s, const zoo::Point& p, const zoo::Point& q, std::size_t n);

// Entry n-1 is d_n(p, q) for n = 1..n_max; one orbit pass.
std::vector<double> bowen_profile(const zoo::DynSystem& s, const zoo::Point& p, const zoo::Point& q,
                                  std::size_t n_max);

// All pairwise d_n distances of a small pool (row-major, size m*m).
std::vector<double> bowen_distance_matrix(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool,
                                          std::size_t n);

// Time indices 0..n-1 ordered n-1, 0, then by recursive midpoints, so that an
// early-exit scan sees well-spread times first.
std::vector<std::size_t> spread_time_order(std::size_t n);

}  // namespace polyent::lab
