#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace polyent::zoo {

using Complex = std::complex<double>;

// [z] -> [H z] on P^1 or P^2. The chart state is the canonical representative
// stored as interleaved (re, im) pairs: unit norm, first coordinate above
// kPhaseThreshold real and positive.
class ProjectiveMap {
 public:
  static constexpr double kPhaseThreshold = 1e-12;

  ProjectiveMap(std::size_t dim, Eigen::MatrixXcd h);

  std::size_t dim() const { return dim_; }
  std::size_t coords() const { return dim_ + 1; }
  std::size_t state_dim() const { return 2 * (dim_ + 1); }
  const Eigen::MatrixXcd& matrix() const { return h_; }
  ProjectiveMap inverse() const { return ProjectiveMap(dim_, hinv_); }

  void step(double* p) const { apply(h_flat_, p); }
  void step_inverse(double* p) const { apply(hinv_flat_, p); }

  static void normalize(double* p, std::size_t coords);

  // Chordal distance sqrt(1 - |<p,q>|^2 / (|p|^2 |q|^2)), evaluated through the
  // Lagrange identity so that nearby points do not cancel.
  template <typename T>
  double distance(const T* p, const T* q) const {
    const std::size_t c = coords();
    double cross = 0.0, np = 0.0, nq = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
      const double pr = p[2 * i], pi = p[2 * i + 1], qr = q[2 * i], qi = q[2 * i + 1];
      np += pr * pr + pi * pi;
      nq += qr * qr + qi * qi;
      for (std::size_t j = i + 1; j < c; ++j) {
        const double ar = p[2 * j], ai = p[2 * j + 1], br = q[2 * j], bi = q[2 * j + 1];
        // p_i q_j - p_j q_i
        const double re = (pr * br - pi * bi) - (ar * qr - ai * qi);
        const double im = (pr * bi + pi * br) - (ar * qi + ai * qr);
        cross += re * re + im * im;
      }
    }
    return std::min(1.0, std::sqrt(cross / (np * nq)));
  }

  // Entries of the projector z z^*; Lipschitz in the chordal metric.
  std::size_t feature_count() const { return dim_ == 1 ? 3 : 5; }
  double feature(const double* p, std::size_t i) const;
  double feature_lipschitz(std::size_t) const { return dim_ == 1 ? 2.0 : std::sqrt(2.0); }
  double feature_period(std::size_t) const { return 0.0; }

  // Norm of the differential at p for the Fubini-Study tangent metric.
  double derivative_norm(const double* p) const;
  // Norm of D(f^n) at p, via the chain rule with per-step renormalization.
  double power_derivative_norm(const double* p, std::size_t n) const;
  // Entry n-1 holds ||D f^n(p)||, n = 1..n_max.
  std::vector<double> derivative_norm_sequence(const double* p, std::size_t n_max) const;

 private:
  void apply(const std::vector<Complex>& m, double* p) const;

  std::size_t dim_;
  Eigen::MatrixXcd h_;
  Eigen::MatrixXcd hinv_;
  std::vector<Complex> h_flat_;
  std::vector<Complex> hinv_flat_;
};

}  // namespace polyent::zoo
