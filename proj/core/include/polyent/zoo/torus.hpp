#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "polyent/cohomology/int_matrix.hpp"

namespace polyent::zoo {

// x -> A x + b on R^d / Z^d with A integral and |det A| = 1.
class TorusAffineMap {
 public:
  static constexpr std::size_t kMaxDim = 16;

  TorusAffineMap(cohomology::IntMatrix a, std::vector<double> b);
  explicit TorusAffineMap(cohomology::IntMatrix a);

  std::size_t dim() const { return d_; }
  const cohomology::IntMatrix& matrix() const { return a_; }
  const cohomology::IntMatrix& inverse_matrix() const { return ainv_; }
  const std::vector<double>& translation() const { return b_; }

  // Chart state: d coordinates in [0, 1).
  std::size_t state_dim() const { return d_; }
  void step(double* p) const;
  void step_inverse(double* p) const;

  // Double-double iteration (used by orbit/iterate for long runs).
  void step_compensated(double* hi, double* lo) const;

  // f^n(p) through the exact integer power A^n and sum_{j<n} A^j; every
  // double is a dyadic rational, so the result is exact before rounding.
  std::vector<double> iterate_exact(const std::vector<double>& p, std::int64_t n) const;

  template <typename T>
  double distance(const T* p, const T* q) const {
    double best = 0.0;
    for (std::size_t i = 0; i < d_; ++i) {
      double dd = std::abs(static_cast<double>(p[i]) - static_cast<double>(q[i]));
      dd -= std::floor(dd);
      best = std::max(best, std::min(dd, 1.0 - dd));
    }
    return best;
  }

  // Features for neighbour hashing: the coordinates themselves (1-Lipschitz, period 1).
  std::size_t feature_count() const { return d_; }
  double feature(const double* p, std::size_t i) const { return p[i]; }
  double feature_lipschitz(std::size_t) const { return 1.0; }
  double feature_period(std::size_t) const { return 1.0; }

  // ||A^n||_inf for the chart metric.
  double power_norm(std::uint64_t n) const;

 private:
  std::size_t d_;
  cohomology::IntMatrix a_;
  cohomology::IntMatrix ainv_;
  std::vector<double> ad_;
  std::vector<double> ainvd_;
  std::vector<double> b_;
  std::vector<double> binv_;  // translation of the inverse map
};

}  // namespace polyent::zoo
