#include "polyent/lab/recurrence.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyent::lab {

RecurrenceProfile recurrence_profile(const zoo::DynSystem& s, double eps, std::size_t horizon,
                                     const std::vector<zoo::Point>& pool) {
  if (horizon == 0) throw std::invalid_argument("recurrence_profile: horizon must be at least 1");
  if (!(eps > 0)) throw std::invalid_argument("recurrence_profile: eps must be positive");
  RecurrenceProfile r;
  r.eps = eps;
  r.horizon = horizon;
  r.first_return.assign(pool.size(), 0);
  std::size_t missing = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    zoo::Point q = pool[i];
    for (std::size_t j = 1; j <= horizon; ++j) {
      q = zoo::evaluate(s, q);
      if (zoo::distance(s, pool[i], q) <= eps) {
        r.first_return[i] = j;
        break;
      }
    }
    if (r.first_return[i] == 0) ++missing;
    r.max_first_return = std::max(r.max_first_return, r.first_return[i]);
  }
  r.fraction_nonreturning = pool.empty() ? 0.0 : static_cast<double>(missing) / static_cast<double>(pool.size());
  return r;
}

HorizonScan recurrence_scan(const zoo::DynSystem& s, double eps, const std::vector<std::size_t>& horizons,
                            const std::vector<zoo::Point>& pool) {
  if (horizons.size() < 2) throw std::invalid_argument("recurrence_scan: need at least two horizons");
  HorizonScan scan;
  for (std::size_t h : horizons) scan.profiles.push_back(recurrence_profile(s, eps, h, pool));
  const auto& a = scan.profiles[scan.profiles.size() - 2];
  const auto& b = scan.profiles.back();
  scan.stable = a.fraction_nonreturning == 0.0 && b.fraction_nonreturning == 0.0 &&
                a.max_first_return == b.max_first_return;
  return scan;
}

}  // namespace polyent::lab
