#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace polyent::zoo {

struct FourierMode {
  std::uint64_t k = 1;
  std::complex<double> a;
  // {k alpha} in [0, 1); supplied exactly by callers that hold alpha to high precision.
  double residue = 0.0;
};

// (x, y) -> (x + alpha, y + g(x)) on T^2 with g(x) = sum_k 2 Re(a_k e^{2 pi i k x}).
class SkewProduct {
 public:
  struct Mode {
    std::uint64_t k;
    std::complex<double> a;
  };

  SkewProduct(double alpha, std::vector<Mode> modes);
  // Modes with exact residues {k alpha}.
  static SkewProduct with_residues(double alpha, std::vector<FourierMode> modes);

  double alpha() const { return alpha_; }
  const std::vector<FourierMode>& modes() const { return modes_; }

  std::size_t state_dim() const { return 2; }
  void step(double* p) const;
  void step_inverse(double* p) const;

  double g(double x) const;
  double g_prime(double x) const;

  // sum_{j<n} g(x + j alpha) (or g') through the per-mode geometric series.
  double birkhoff_closed(double x, std::uint64_t n, bool derivative = false) const;
  // Same sum accumulated term by term with compensated summation.
  double birkhoff_direct(double x, std::uint64_t n, bool derivative = false) const;

  // Contribution of one mode to birkhoff_closed.
  double mode_birkhoff(std::size_t i, double x, std::uint64_t n, bool derivative = false) const {
    return n == 0 ? 0.0 : mode_sum(modes_.at(i), x, n, derivative);
  }

  // f^n(x, y) in closed form; negative n via the inverse.
  void iterate(double* p, std::int64_t n) const;

  template <typename T>
  double distance(const T* p, const T* q) const {
    double best = 0.0;
    for (int i = 0; i < 2; ++i) {
      double dd = std::abs(static_cast<double>(p[i]) - static_cast<double>(q[i]));
      dd -= std::floor(dd);
      best = std::max(best, std::min(dd, 1.0 - dd));
    }
    return best;
  }

  std::size_t feature_count() const { return 2; }
  double feature(const double* p, std::size_t i) const { return p[i]; }
  double feature_lipschitz(std::size_t) const { return 1.0; }
  double feature_period(std::size_t) const { return 1.0; }

  // ||D f^n||_inf at x: the differential is [[1, 0], [D_n(x), 1]].
  double power_derivative_norm(double x, std::uint64_t n) const {
    return 1.0 + std::abs(birkhoff_closed(x, n, true));
  }

 private:
  SkewProduct() = default;
  double mode_sum(const FourierMode& m, double x, std::uint64_t n, bool derivative) const;

  double alpha_ = 0.0;
  std::vector<FourierMode> modes_;
};

}  // namespace polyent::zoo
