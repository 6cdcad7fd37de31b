#pragma once

// Itinerary coding through a finite family of regions F_1..F_m with the
// implicit complement F_inf. A point inside several regions contributes every
// admissible letter (up to a per-step cap), so one orbit may realize several
// words; Cod(N) counts the distinct length-N words over a pool.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyent/common/numeric.hpp"
#include "polyent/zoo/system.hpp"

namespace polyent::lab {

struct Region {
  // Open ball when predicate is empty; otherwise the predicate decides.
  zoo::Point center;
  double radius = 0.0;
  std::function<bool(const zoo::Point&)> predicate;
  std::string label;

  static Region ball(zoo::Point center, double radius, std::string label = "");
  static Region from_predicate(std::function<bool(const zoo::Point&)> pred, std::string label);
  bool contains(const zoo::DynSystem& s, const zoo::Point& p) const;
};

struct CodingParams {
  std::vector<std::size_t> n_schedule{8, 16, 32, 64, 128, 256, 512};
  std::size_t pool_size = 20000;
  std::uint64_t seed = 1;
  zoo::SamplerSpec sampler;
  // Share of the pool drawn as f^{-s}(ball point), s uniform in [0, max N],
  // so that late entries into small regions are represented.
  double preimage_fraction = 0.5;
  std::size_t branch_cap = 4;           // letters kept per step
  std::size_t max_words_per_point = 4096;
  double saturation_threshold = 0.02;
};

class BranchingExplosion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CodingRecord {
  std::size_t n = 0;
  std::size_t words = 0;
  std::size_t half_pool_words = 0;
  bool saturated = false;
};

struct CodingResult {
  std::vector<CodingRecord> records;
  LineFit fit;                // log Cod(N) against log N over all records
  bool cap_binding = false;   // some point met more regions than branch_cap at some step
  std::size_t pool_used = 0;
};

// Letters of p: indices of the regions containing it, or regions.size() for F_inf.
std::vector<std::size_t> letters_at(const zoo::DynSystem& s, const std::vector<Region>& regions, const zoo::Point& p);

std::vector<zoo::Point> coding_pool(const zoo::DynSystem& s, const std::vector<Region>& regions,
                                    const CodingParams& params);

// Throws BranchingExplosion when one point realizes more than
// max_words_per_point words.
CodingResult coding_growth(const zoo::DynSystem& s, const std::vector<Region>& regions, const CodingParams& params);
CodingResult coding_growth(const zoo::DynSystem& s, const std::vector<Region>& regions, const CodingParams& params,
                           const std::vector<zoo::Point>& pool);

}  // namespace polyent::lab
