#pragma once

// Exhaustive separated-set and cover counts on small pools, used to check
// max Sep_{2eps} <= min Cov_eps <= max Sep_eps and greedy >= min Cov_eps.

#include <cstddef>
#include <vector>

#include "polyent/zoo/system.hpp"

namespace polyent::lab {

// Largest pool size the exact searches accept (one 64-bit mask per vertex).
inline constexpr std::size_t kExactPoolLimit = 64;

// dist is an m x m symmetric matrix. Separated means pairwise distance > eps;
// cover centers are pool points, balls are closed.
std::size_t max_separated_exact(const std::vector<double>& dist, std::size_t m, double eps);
std::size_t min_cover_exact(const std::vector<double>& dist, std::size_t m, double eps);

struct SandwichReport {
  std::size_t max_sep_2eps = 0;
  std::size_t min_cover = 0;
  std::size_t max_sep = 0;
  std::size_t greedy = 0;
  bool holds() const { return max_sep_2eps <= min_cover && min_cover <= max_sep && greedy >= min_cover && greedy <= max_sep; }
};

SandwichReport sandwich_check(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool, std::size_t n, double eps);

}  // namespace polyent::lab
