#include "polyent/lab/bowen.hpp"

#include <deque>
#include <stdexcept>

namespace polyent::lab {

double bowen_distance(const zoo::DynSystem& s, const zoo::Point& p, const zoo::Point& q, std::size_t n) {
  if (n == 0) throw std::invalid_argument("bowen_distance: n must be at least 1");
  return bowen_profile(s, p, q, n).back();
}

std::vector<double> bowen_profile(const zoo::DynSystem& s, const zoo::Point& p, const zoo::Point& q,
                                  std::size_t n_max) {
  std::vector<double> out;
  out.reserve(n_max);
  const auto op = zoo::orbit(s, p, n_max), oq = zoo::orbit(s, q, n_max);
  double best = 0.0;
  for (std::size_t j = 0; j < n_max; ++j) {
    best = std::max(best, zoo::distance(s, op[j], oq[j]));
    out.push_back(best);
  }
  return out;
}

std::vector<double> bowen_distance_matrix(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool,
                                          std::size_t n) {
  if (n == 0) throw std::invalid_argument("bowen_distance_matrix: n must be at least 1");
  const std::size_t m = pool.size();
  std::vector<std::vector<zoo::Point>> orbits;
  orbits.reserve(m);
  for (const auto& p : pool) orbits.push_back(zoo::orbit(s, p, n));
  std::vector<double> d(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      double best = 0.0;
      for (std::size_t j = 0; j < n; ++j) best = std::max(best, zoo::distance(s, orbits[a][j], orbits[b][j]));
      d[a * m + b] = d[b * m + a] = best;
    }
  return d;
}

std::vector<std::size_t> spread_time_order(std::size_t n) {
  std::vector<std::size_t> order;
  if (n == 0) return order;
  order.reserve(n);
  order.push_back(n - 1);
  if (n == 1) return order;
  order.push_back(0);
  std::deque<std::pair<std::size_t, std::size_t>> q{{0, n - 1}};
  while (!q.empty()) {
    auto [a, b] = q.front();
    q.pop_front();
    if (b - a < 2) continue;
    const std::size_t mid = a + (b - a) / 2;
    order.push_back(mid);
    q.emplace_back(a, mid);
    q.emplace_back(mid, b);
  }
  return order;
}

}  // namespace polyent::lab
