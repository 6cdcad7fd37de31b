#pragma once

#include <cstddef>
#include <vector>

#include "polyent/zoo/system.hpp"

namespace polyent::lab {

struct RecurrenceProfile {
  double eps = 0.0;
  std::size_t horizon = 0;
  // First j in [1, horizon] with d(x, f^j x) <= eps; 0 when there is none.
  std::vector<std::size_t> first_return;
  std::size_t max_first_return = 0;  // over returning points
  double fraction_nonreturning = 0.0;
  // Some sampled point did not come back: evidence of a wandering point,
  // which forces h_pol >= 1.
  bool wandering_certificate() const { return fraction_nonreturning > 0.0; }
};

RecurrenceProfile recurrence_profile(const zoo::DynSystem& s, double eps, std::size_t horizon,
                                     const std::vector<zoo::Point>& pool);

// Profiles at each horizon; stable when max_first_return stops changing
// across the last two horizons and nothing is left unreturned.
struct HorizonScan {
  std::vector<RecurrenceProfile> profiles;
  bool stable = false;
};
HorizonScan recurrence_scan(const zoo::DynSystem& s, double eps, const std::vector<std::size_t>& horizons,
                            const std::vector<zoo::Point>& pool);

}  // namespace polyent::lab
