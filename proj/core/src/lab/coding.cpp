#include "polyent/lab/coding.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "polyent/common/random.hpp"

namespace polyent::lab {

namespace {

struct WordHash {
  std::uint64_t a = 0x243f6a8885a308d3ULL;
  std::uint64_t b = 0x13198a2e03707344ULL;
  bool operator==(const WordHash&) const = default;
  WordHash extend(std::size_t letter) const {
    return {(a ^ (letter + 1)) * 0x100000001b3ULL, splitmix64(b + letter + 0x9e3779b97f4a7c15ULL)};
  }
};

struct WordHasher {
  std::size_t operator()(const WordHash& w) const { return static_cast<std::size_t>(w.a ^ (w.b * 0x9e3779b97f4a7c15ULL)); }
};

}  // namespace

Region Region::ball(zoo::Point center, double radius, std::string label) {
  if (!(radius > 0)) throw std::invalid_argument("Region::ball: radius must be positive");
  Region r;
  r.center = std::move(center);
  r.radius = radius;
  r.label = std::move(label);
  return r;
}

Region Region::from_predicate(std::function<bool(const zoo::Point&)> pred, std::string label) {
  if (!pred) throw std::invalid_argument("Region::from_predicate: empty predicate");
  Region r;
  r.predicate = std::move(pred);
  r.label = std::move(label);
  return r;
}

bool Region::contains(const zoo::DynSystem& s, const zoo::Point& p) const {
  if (predicate) return predicate(p);
  return zoo::distance(s, center, p) < radius;
}

std::vector<std::size_t> letters_at(const zoo::DynSystem& s, const std::vector<Region>& regions, const zoo::Point& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (regions[i].contains(s, p)) out.push_back(i);
  if (out.empty()) out.push_back(regions.size());
  return out;
}

std::vector<zoo::Point> coding_pool(const zoo::DynSystem& s, const std::vector<Region>& regions,
                                    const CodingParams& params) {
  if (params.n_schedule.empty()) throw std::invalid_argument("coding_growth: empty N schedule");
  if (!(params.preimage_fraction >= 0.0 && params.preimage_fraction <= 1.0)) {
    throw std::invalid_argument("coding_growth: preimage_fraction must lie in [0, 1]");
  }
  std::vector<const Region*> balls;
  for (const auto& r : regions)
    if (!r.predicate) balls.push_back(&r);
  const std::size_t seeded = balls.empty() ? 0 : static_cast<std::size_t>(params.preimage_fraction * params.pool_size);
  std::vector<zoo::Point> pool = zoo::sample_points(s, params.sampler, params.pool_size - seeded,
                                                    derive_seed(params.seed, {11}));
  Rng rng = make_rng(params.seed, {12});
  const std::size_t n_max = *std::max_element(params.n_schedule.begin(), params.n_schedule.end());
  // Ball points by rejection from uniform batches, then pulled back.
  std::uint64_t batch = 0;
  std::vector<zoo::Point> inside;
  while (inside.size() < seeded) {
    if (batch > 200) throw std::invalid_argument("coding_growth: regions too small to seed preimages");
    for (auto& p : zoo::sample_points(s, std::max<std::size_t>(4096, seeded), derive_seed(params.seed, {13, batch++})))
      for (const Region* r : balls)
        if (r->contains(s, p)) {
          inside.push_back(std::move(p));
          break;
        }
  }
  inside.resize(seeded);
  // Interleave so that the first half of the pool has the same mix as the whole.
  std::vector<zoo::Point> mixed;
  mixed.reserve(params.pool_size);
  std::size_t u = 0, v = 0;
  for (std::size_t i = 0; i < params.pool_size; ++i) {
    if ((i + 1) * seeded / params.pool_size > i * seeded / params.pool_size) {
      const auto back = static_cast<std::int64_t>(rng() % (n_max + 1));
      mixed.push_back(zoo::iterate(s, inside[v++], -back));
    } else {
      mixed.push_back(std::move(pool[u++]));
    }
  }
  return mixed;
}

CodingResult coding_growth(const zoo::DynSystem& s, const std::vector<Region>& regions, const CodingParams& params) {
  return coding_growth(s, regions, params, coding_pool(s, regions, params));
}

CodingResult coding_growth(const zoo::DynSystem& s, const std::vector<Region>& regions, const CodingParams& params,
                           const std::vector<zoo::Point>& pool) {
  if (regions.empty()) throw std::invalid_argument("coding_growth: no regions");
  if (params.branch_cap == 0) throw std::invalid_argument("coding_growth: branch_cap must be positive");
  std::vector<std::size_t> ns = params.n_schedule;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.empty() || ns.front() == 0) throw std::invalid_argument("coding_growth: N values must be positive");

  CodingResult res;
  res.pool_used = pool.size();
  std::vector<std::unordered_set<WordHash, WordHasher>> words(ns.size());
  std::vector<std::size_t> half(ns.size(), 0);
  const std::size_t half_at = pool.size() / 2;
  std::vector<WordHash> current, next;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i == half_at)
      for (std::size_t k = 0; k < ns.size(); ++k) half[k] = words[k].size();
    zoo::Point p = pool[i];
    current.assign(1, WordHash{});
    std::size_t k = 0;
    for (std::size_t t = 0; t < ns.back(); ++t) {
      auto letters = letters_at(s, regions, p);
      if (letters.size() > params.branch_cap) {
        res.cap_binding = true;
        letters.resize(params.branch_cap);
      }
      next.clear();
      for (const auto& w : current)
        for (std::size_t l : letters) next.push_back(w.extend(l));
      if (letters.size() > 1) {
        std::sort(next.begin(), next.end(), [](const WordHash& x, const WordHash& y) {
          return x.a != y.a ? x.a < y.a : x.b < y.b;
        });
        next.erase(std::unique(next.begin(), next.end()), next.end());
      }
      if (next.size() > params.max_words_per_point) {
        throw BranchingExplosion("coding_growth: a single orbit realizes more than " +
                                 std::to_string(params.max_words_per_point) + " words by N = " +
                                 std::to_string(t + 1));
      }
      current.swap(next);
      if (t + 1 == ns[k]) {
        words[k].insert(current.begin(), current.end());
        ++k;
      }
      p = zoo::evaluate(s, p);
    }
  }
  if (pool.size() <= 1)
    for (std::size_t k = 0; k < ns.size(); ++k) half[k] = words[k].size();

  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    CodingRecord r;
    r.n = ns[k];
    r.words = words[k].size();
    r.half_pool_words = half[k];
    r.saturated = static_cast<double>(r.words - r.half_pool_words) <
                  params.saturation_threshold * static_cast<double>(r.words) + 1e-12;
    res.records.push_back(r);
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(static_cast<double>(r.words)));
  }
  if (xs.size() >= 2) res.fit = fit_line(xs, ys);
  return res;
}

}  // namespace polyent::lab
