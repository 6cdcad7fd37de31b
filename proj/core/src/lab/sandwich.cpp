#include "polyent/lab/sandwich.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "polyent/lab/bowen.hpp"
#include "polyent/lab/separation.hpp"

namespace polyent::lab {

namespace {

using Mask = std::uint64_t;

// Closed neighbourhoods of the graph joining points at distance <= eps.
std::vector<Mask> close_graph(const std::vector<double>& dist, std::size_t m, double eps) {
  if (m > kExactPoolLimit) throw std::invalid_argument("exact pool search: at most 64 points");
  if (dist.size() != m * m) throw std::invalid_argument("exact pool search: distance matrix has wrong size");
  std::vector<Mask> nb(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i == j || dist[i * m + j] <= eps) nb[i] |= Mask{1} << j;
  return nb;
}

class IndependentSet {
 public:
  explicit IndependentSet(const std::vector<Mask>& nb) : nb_(nb) {}
  std::size_t solve(Mask all) {
    best_ = 0;
    search(all, 0);
    return best_;
  }

 private:
  void search(Mask r, std::size_t taken) {
    if (r == 0) {
      best_ = std::max(best_, taken);
      return;
    }
    if (taken + static_cast<std::size_t>(std::popcount(r)) <= best_) return;
    // A vertex of degree <= 1 in r is always in some maximum set.
    int pick = -1, heavy = -1, heavy_deg = -1;
    for (Mask it = r; it; it &= it - 1) {
      const int v = std::countr_zero(it);
      const int deg = std::popcount(nb_[v] & r) - 1;
      if (deg <= 1) {
        pick = v;
        break;
      }
      if (deg > heavy_deg) {
        heavy_deg = deg;
        heavy = v;
      }
    }
    if (pick >= 0) {
      search(r & ~nb_[pick], taken + 1);
      return;
    }
    search(r & ~nb_[heavy], taken + 1);
    search(r & ~(Mask{1} << heavy), taken);
  }
  const std::vector<Mask>& nb_;
  std::size_t best_ = 0;
};

class DominatingSet {
 public:
  explicit DominatingSet(const std::vector<Mask>& nb) : nb_(nb) {
    for (Mask m : nb_) max_cover_ = std::max(max_cover_, std::popcount(m));
  }
  std::size_t solve(Mask all, std::size_t upper) {
    best_ = upper;
    search(all, 0);
    return best_;
  }

 private:
  void search(Mask undominated, std::size_t used) {
    if (undominated == 0) {
      best_ = std::min(best_, used);
      return;
    }
    const std::size_t lower = (std::popcount(undominated) + max_cover_ - 1) / max_cover_;
    if (used + lower >= best_) return;
    // Branch on the undominated vertex with the fewest candidate dominators.
    int target = -1, fewest = 65;
    for (Mask it = undominated; it; it &= it - 1) {
      const int v = std::countr_zero(it);
      const int c = std::popcount(nb_[v]);
      if (c < fewest) {
        fewest = c;
        target = v;
      }
    }
    for (Mask it = nb_[target]; it; it &= it - 1) {
      const int w = std::countr_zero(it);
      search(undominated & ~nb_[w], used + 1);
    }
  }
  const std::vector<Mask>& nb_;
  int max_cover_ = 1;
  std::size_t best_ = 0;
};

Mask full_mask(std::size_t m) { return m == 64 ? ~Mask{0} : (Mask{1} << m) - 1; }

}  // namespace

std::size_t max_separated_exact(const std::vector<double>& dist, std::size_t m, double eps) {
  if (m == 0) return 0;
  const auto nb = close_graph(dist, m, eps);
  return IndependentSet(nb).solve(full_mask(m));
}

std::size_t min_cover_exact(const std::vector<double>& dist, std::size_t m, double eps) {
  if (m == 0) return 0;
  const auto nb = close_graph(dist, m, eps);
  return DominatingSet(nb).solve(full_mask(m), m);
}

SandwichReport sandwich_check(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool, std::size_t n,
                              double eps) {
  const std::size_t m = pool.size();
  const auto dist = bowen_distance_matrix(s, pool, n);
  SandwichReport r;
  r.max_sep_2eps = max_separated_exact(dist, m, 2 * eps);
  r.min_cover = min_cover_exact(dist, m, eps);
  r.max_sep = max_separated_exact(dist, m, eps);
  r.greedy = greedy_separated_indices(s, pool, n, eps).size();
  return r;
}

}  // namespace polyent::lab
