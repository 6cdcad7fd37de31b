#include "polyent/lab/northsouth.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polyent/common/numeric.hpp"
#include "polyent/common/random.hpp"

namespace polyent::lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Vec3 {
  double x, y, z;
};

Vec3 sphere_position(double u, double theta) {
  if (u == -kInf) return {0.0, 0.0, 0.0};
  if (u == kInf) return {0.0, 0.0, 1.0};
  const double uc = std::clamp(u, -600.0, 600.0);
  const double r = 0.5 / std::cosh(0.5 * uc);
  const double phase = 2.0 * std::numbers::pi * theta;
  return {r * std::cos(phase), r * std::sin(phase), logistic(uc)};
}

}  // namespace

double sphere_height_map(double rho, double w) {
  const double r2 = rho * rho;
  return r2 * w / ((r2 - 1.0) * w + 1.0);
}

double logit(double w) { return std::log(w) - std::log1p(-w); }

double logistic(double u) { return u >= 0 ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u)); }

double sphere_chord(double u1, double theta1, double u2, double theta2) {
  const Vec3 a = sphere_position(u1, theta1), b = sphere_position(u2, theta2);
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

double skew_distance(const SkewPoint& a, const SkewPoint& b) {
  return std::max({std::abs(a.rho - b.rho), std::abs(a.alpha - b.alpha), sphere_chord(a.u, a.theta, b.u, b.theta)});
}

SkewPoint skew_step(const SkewPoint& p, std::uint64_t times) {
  SkewPoint q = p;
  q.u = p.u + static_cast<double>(times) * std::log(4.0);
  q.theta = frac(p.theta + frac_mul(times, p.alpha));
  return q;
}

double skew_bowen_distance(const SkewPoint& a, const SkewPoint& b, std::size_t n) {
  double best = 0.0;
  for (std::size_t t = 0; t < n; ++t) best = std::max(best, skew_distance(skew_step(a, t), skew_step(b, t)));
  return best;
}

void NorthSouthParams::validate() const {
  if (!(eps > 0.0 && eps < 0.25)) throw std::invalid_argument("northsouth_cover: eps must lie in (0, 1/4)");
  if (n == 0) throw std::invalid_argument("northsouth_cover: n must be at least 1");
  if (!(rho_lo > 1.0 && rho_lo < rho_hi)) throw std::invalid_argument("northsouth_cover: need 1 < rho_lo < rho_hi");
  if (!(alpha_lo >= 0.0 && alpha_lo < alpha_hi && alpha_hi <= 1.0)) {
    throw std::invalid_argument("northsouth_cover: need 0 <= alpha_lo < alpha_hi <= 1");
  }
}

NorthSouthCover::Grid::Grid(double lo_, double hi, double radius) : lo(lo_) {
  const double len = hi - lo_;
  count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / (2.0 * radius) - 1e-12)));
  step = len / static_cast<double>(count);
}

std::size_t NorthSouthCover::Grid::index(double x) const {
  if (step <= 0.0) return 0;
  const double k = std::floor((x - lo) / step);
  if (k < 0) return 0;
  return std::min(count - 1, static_cast<std::size_t>(k));
}

NorthSouthCover::NorthSouthCover(NorthSouthParams params) : p_(params) {
  p_.validate();
  const double eps = p_.eps;
  shift_ = std::log(4.0);
  // Cap band: a height below eps^2/16 is within chord eps/4 of its pole.
  u_lo_ = logit(eps * eps / 16.0);
  u_hi_ = -u_lo_;
  h_ = 2.0 * eps;
  tau_ = eps / (2.0 * std::numbers::pi);
  theta_count_ = static_cast<std::size_t>(std::ceil(1.0 / tau_));
  tau_grid_ = 1.0 / static_cast<double>(theta_count_);
  band_steps_ = static_cast<std::size_t>(std::floor((u_hi_ - u_lo_ + 3.0 * h_) / shift_));
  const double p = static_cast<double>(std::max<std::size_t>(1, band_steps_));
  m0_ = static_cast<std::uint64_t>(std::ceil(4.0 * p / tau_));

  rho_grid_ = Grid(p_.rho_lo, p_.rho_hi, eps);
  alpha_coarse_ = Grid(p_.alpha_lo, p_.alpha_hi, eps);
  alpha_small_ = Grid(p_.alpha_lo, p_.alpha_hi, tau_ / (2.0 * p));
  alpha_perturbed_ = Grid(p_.alpha_lo, p_.alpha_hi, tau_ / (4.0 * p));
  const double u_min = u_lo_ - static_cast<double>(p_.n - 1) * shift_ - h_;
  u_grid_ = Grid(u_min, u_hi_, h_ / 2.0);

  std::uint64_t total = 2 * alpha_coarse_.count;  // the two poles
  for (std::size_t k = 0; k < u_grid_.count; ++k) total += elements_at(entry_time(u_grid_.at(k)));
  size_ = total * rho_grid_.count;
}

double NorthSouthCover::linear_constant() const {
  // u-grid points: at most (u_hi - u_lo + (n-1) L + h) / h + 1 <= n (L/h + (u_hi - u_lo)/h + 2).
  const double per_u = static_cast<double>(
      std::max({alpha_coarse_.count, alpha_small_.count * theta_count_, alpha_perturbed_.count * theta_count_}));
  const double u_points = shift_ / h_ + (u_hi_ - u_lo_) / h_ + 2.0;
  return static_cast<double>(rho_grid_.count) * (2.0 * static_cast<double>(alpha_coarse_.count) + per_u * u_points);
}

std::uint64_t NorthSouthCover::entry_time(double u) const {
  const double gate = u_lo_ - 1.5 * h_;
  if (u > gate) return 0;
  return static_cast<std::uint64_t>(std::floor((gate - u) / shift_)) + 1;
}

std::uint64_t NorthSouthCover::elements_at(std::uint64_t m) const {
  if (m >= p_.n) return alpha_coarse_.count;
  if (m < m0_) return alpha_small_.count * theta_count_;
  return alpha_perturbed_.count * theta_count_;
}

SkewPoint NorthSouthCover::nearest(const SkewPoint& x) const {
  SkewPoint c;
  c.rho = rho_grid_.at(rho_grid_.index(x.rho));
  const double u_min = u_grid_.lo, u_max = u_hi_;
  if (x.u < u_min || x.u > u_max) {
    c.alpha = alpha_coarse_.at(alpha_coarse_.index(x.alpha));
    c.u = x.u < u_min ? -kInf : kInf;
    return c;
  }
  c.u = u_grid_.at(u_grid_.index(x.u));
  const std::uint64_t m = entry_time(c.u);
  if (m >= p_.n) {
    // The band is entered after the window closes: only rho and alpha matter.
    c.alpha = alpha_coarse_.at(alpha_coarse_.index(x.alpha));
    return c;
  }
  const double md = static_cast<double>(m);
  // Longitude of x when it reaches the band, rounded to the theta grid.
  const double arrival = frac(x.theta + frac_mul(m, x.alpha));
  const double snapped = frac(tau_grid_ * std::nearbyint(arrival / tau_grid_));
  if (m < m0_) {
    c.alpha = alpha_small_.at(alpha_small_.index(x.alpha));
    c.theta = frac(snapped - frac_mul(m, c.alpha));
  } else {
    // Perturb the grid angle so that m * alpha is an integer; the rotation
    // then restarts from the grid longitude when the band is reached.
    const double base = alpha_perturbed_.at(alpha_perturbed_.index(x.alpha));
    const double fr = frac_mul(m, base);
    c.alpha = base - fr / md;
    if (c.alpha < p_.alpha_lo) c.alpha = base + (1.0 - fr) / md;
    c.theta = snapped;
  }
  return c;
}

SkewPoint NorthSouthCover::random_point(std::uint64_t seed, std::uint64_t index) const {
  Rng rng = make_rng(seed, {0x4e53, index});
  SkewPoint x;
  x.rho = p_.rho_lo + (p_.rho_hi - p_.rho_lo) * uniform01(rng);
  x.alpha = p_.alpha_lo + (p_.alpha_hi - p_.alpha_lo) * uniform01(rng);
  x.theta = uniform01(rng);
  const double pick = uniform01(rng);
  const double u_min = u_grid_.lo;
  if (pick < 0.1) x.u = u_min - 20.0 * uniform01(rng);
  else if (pick < 0.2) x.u = u_hi_ + 20.0 * uniform01(rng);
  else x.u = u_min + (u_hi_ - u_min) * uniform01(rng);
  return x;
}

CoverVerification NorthSouthCover::verify(std::size_t samples, std::uint64_t seed) const {
  CoverVerification v;
  v.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const SkewPoint x = random_point(seed, i);
    const double d = skew_bowen_distance(x, nearest(x), p_.n);
    v.max_distance = std::max(v.max_distance, d);
    if (d > p_.eps && v.verified) {
      v.verified = false;
      v.witness = x;
    }
  }
  return v;
}

TransitReport NorthSouthCover::transit_counts(std::size_t samples, std::uint64_t seed) const {
  const double band = logit(std::sqrt(p_.eps) / 3.0);  // negative
  TransitReport r;
  r.n_eps = static_cast<std::size_t>(std::floor(-2.0 * band / shift_)) + 1;
  for (std::size_t i = 0; i < samples; ++i) {
    const SkewPoint x = random_point(seed, i);
    std::size_t c = 0;
    for (std::size_t s = 0; s < p_.n; ++s) {
      const double u = x.u + static_cast<double>(s) * shift_;
      if (u > band && u < -band) ++c;
    }
    r.max_transits = std::max(r.max_transits, c);
  }
  return r;
}

}  // namespace polyent::lab
