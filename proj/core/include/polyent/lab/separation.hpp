#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyent/zoo/system.hpp"

namespace polyent::lab {

using Restriction = std::function<bool(const zoo::Point&)>;

struct BowenParams {
  std::vector<double> eps_list{0.2, 0.1, 0.05};        // strictly decreasing
  std::vector<std::size_t> n_schedule;                  // strictly increasing; empty = 2^4..2^12
  std::size_t pool_size = 10000;                        // >= 1000
  std::uint64_t seed = 1;
  zoo::SamplerSpec sampler;
  Restriction restriction;                              // initial-set predicate K
  std::string restriction_label;
  double saturation_threshold = 0.02;                   // relative gain from pool/2 to pool
  std::size_t memory_budget_mb = 2048;                  // stored center orbits, all workers together
  unsigned workers = 0;                                 // 0 = hardware concurrency

  const std::vector<std::size_t>& schedule() const;
  void validate() const;

  // Geometric schedule lo, lo*r, ... <= hi, rounded and deduplicated.
  static std::vector<std::size_t> geometric_schedule(std::size_t lo, std::size_t hi, double ratio = 2.0);

 private:
  mutable std::vector<std::size_t> default_schedule_;
};

struct SeparationRecord {
  double eps = 0.0;
  std::size_t n = 0;
  std::size_t sep_count = 0;         // after the monotone envelope
  std::size_t greedy_count = 0;      // raw greedy count on the full pool
  std::size_t half_pool_count = 0;   // greedy count on the first half of the pool
  std::size_t pool_used = 0;
  bool saturated = false;
  bool budget_exceeded = false;
  std::uint64_t seed = 0;
};

struct SeparationCurve {
  std::string system;
  std::vector<SeparationRecord> records;
  std::size_t envelope_adjustments = 0;  // records raised by the monotone envelope
  bool bowen_monotone = true;            // d_{n+1} >= d_n held on the sampled pairs
  double seconds = 0.0;
};

struct EpsFit {
  double eps = 0.0;
  bool usable = false;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  std::size_t points = 0;
};

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  double chosen_eps = 0.0;
  std::vector<EpsFit> per_eps;
  SeparationCurve curve;
  std::string caveat;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Draws the estimator pool: sampler points filtered by the restriction.
// Throws if the restriction keeps nothing, or keeps under 10% of draws.
std::vector<zoo::Point> draw_pool(const zoo::DynSystem& s, const BowenParams& params);

// Greedy maximal (n, eps)-separated subset of the pool, processed in pool order.
SeparationRecord greedy_separated_count(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool,
                                        std::size_t n, double eps, std::size_t memory_budget_mb = 2048,
                                        double saturation_threshold = 0.02);
SeparationRecord greedy_separated_count(const zoo::DynSystem& s, const BowenParams& params, std::size_t n,
                                        double eps);

// Indices of the greedy set (small pools; used by the property tests).
std::vector<std::size_t> greedy_separated_indices(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool,
                                                  std::size_t n, double eps);

// All (eps, n) cells, monotone envelope applied. Cells run on a worker pool;
// the output does not depend on the worker count.
SeparationCurve separation_curve(const zoo::DynSystem& s, const BowenParams& params, const std::string& name = "");

// Per-eps least squares of log count on log n over the longest saturated run;
// the exponent is the max over usable eps. Throws InsufficientData when no
// eps has 4 saturated points in a row.
ExponentFit fit_exponent(const SeparationCurve& curve);

ExponentFit estimate_hpol(const zoo::DynSystem& s, const BowenParams& params, const std::string& name = "");
// Same pipeline; params.restriction must be set.
ExponentFit restricted_estimate(const zoo::DynSystem& s, const BowenParams& params, const std::string& name = "");

}  // namespace polyent::lab
