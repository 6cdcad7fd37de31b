#pragma once

// Explicit Bowen cover, of size linear in n, for the skew model
//   G(rho, alpha, w, theta) = (rho, alpha, g(w), theta + alpha)
// on J1 x J2 x S, where S is the sphere of diameter 1 parametrized by height
// w in [0,1] and longitude theta in R/Z, and g = h_2 moves every w in (0,1)
// towards the north pole. Points carry the log-odds u = log(w / (1 - w)),
// in which g is the translation u -> u + log 4; poles are u = -inf / +inf.
//
// The cover is never materialized: size() counts it and nearest() maps a
// point to the cover element that is eps-close in d_n.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace polyent::lab {

// w -> rho^2 w / ((rho^2 - 1) w + 1): the homography x -> rho x seen on heights.
double sphere_height_map(double rho, double w);
double logit(double w);
double logistic(double u);

struct SkewPoint {
  double rho = 0.0;
  double alpha = 0.0;   // rotation per step, in turns
  double u = 0.0;       // log-odds of the height; +-inf at the poles
  double theta = 0.0;   // longitude, in turns
};

// Euclidean chord on S between (u, theta) and (u', theta').
double sphere_chord(double u1, double theta1, double u2, double theta2);
// max(|d rho|, |d alpha|, chord).
double skew_distance(const SkewPoint& a, const SkewPoint& b);
SkewPoint skew_step(const SkewPoint& p, std::uint64_t times = 1);
double skew_bowen_distance(const SkewPoint& a, const SkewPoint& b, std::size_t n);

struct NorthSouthParams {
  double eps = 0.1;
  std::size_t n = 1000;
  double rho_lo = 2.5, rho_hi = 3.5;        // J1
  double alpha_lo = 0.1, alpha_hi = 0.15;   // J2
  void validate() const;
};

struct CoverVerification {
  bool verified = true;
  std::size_t samples = 0;
  double max_distance = 0.0;
  std::optional<SkewPoint> witness;  // first point farther than eps from its cover element
};

struct TransitReport {
  std::size_t n_eps = 0;          // smallest N with g^N(sqrt(eps)/3) > 1 - sqrt(eps)/3
  std::size_t max_transits = 0;   // max over samples of #{s < n : sqrt(eps)/3 < g^s(w) < 1 - sqrt(eps)/3}
  bool within_bound() const { return max_transits <= n_eps; }
};

class NorthSouthCover {
 public:
  explicit NorthSouthCover(NorthSouthParams params);

  const NorthSouthParams& params() const { return p_; }
  std::uint64_t size() const { return size_; }
  // Cover elements attached to one step of n (the slope of the linear size).
  double size_per_step() const { return static_cast<double>(size_) / static_cast<double>(p_.n); }
  // C(eps) with size() <= C(eps) * n for every n >= 1 at these radii.
  double linear_constant() const;

  // Cover element within eps of x in d_n.
  SkewPoint nearest(const SkewPoint& x) const;

  // Random points of J1 x J2 x S whose heights spread over every entry time
  // into the transition band, plus a share of cap points.
  SkewPoint random_point(std::uint64_t seed, std::uint64_t index) const;
  CoverVerification verify(std::size_t samples, std::uint64_t seed) const;
  TransitReport transit_counts(std::size_t samples, std::uint64_t seed) const;

  // Number of steps, at most, that one orbit spends in the widened band
  // (minus one); the angular constraints have to hold for that many steps.
  std::size_t band_steps() const { return band_steps_; }
  // Entry times from this value on use the perturbed-rotation construction.
  std::uint64_t perturbed_threshold() const { return m0_; }

 private:
  struct Grid {
    double lo = 0.0, step = 1.0;
    std::size_t count = 1;
    Grid() = default;
    Grid(double lo, double hi, double radius);
    std::size_t index(double x) const;
    double at(std::size_t i) const { return lo + step * (static_cast<double>(i) + 0.5); }
  };

  std::uint64_t entry_time(double u_grid) const;
  std::uint64_t elements_at(std::uint64_t m) const;

  NorthSouthParams p_;
  double shift_ = 0.0;    // log 4
  double u_lo_ = 0.0, u_hi_ = 0.0, h_ = 0.0, tau_ = 0.0, tau_grid_ = 0.0;
  std::size_t band_steps_ = 0;
  std::uint64_t m0_ = 0;
  Grid rho_grid_, alpha_coarse_, alpha_small_, alpha_perturbed_, u_grid_;
  std::size_t theta_count_ = 0;
  std::uint64_t size_ = 0;
};

}  // namespace polyent::lab
