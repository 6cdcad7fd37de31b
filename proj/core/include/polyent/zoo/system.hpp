#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polyent/zoo/projective.hpp"
#include "polyent/zoo/skew.hpp"
#include "polyent/zoo/torus.hpp"

namespace polyent::zoo {

using DynSystem = std::variant<TorusAffineMap, ProjectiveMap, SkewProduct>;

// Chart coordinates: torus [0,1)^d, projective interleaved (re, im) of the
// canonical representative, skew (x, y) in [0,1)^2.
using Point = std::vector<double>;

std::string family_name(const DynSystem& s);
std::size_t state_dim(const DynSystem& s);

// Canonical chart form (wraps torus coordinates, normalizes projective ones).
Point canonical(const DynSystem& s, Point p);

Point evaluate(const DynSystem& s, const Point& p);
Point evaluate_inverse(const DynSystem& s, const Point& p);

// f^n(p); negative n uses the inverse. Torus maps go through the exact
// integer path, skew products through the closed-form Birkhoff sum.
Point iterate(const DynSystem& s, const Point& p, std::int64_t n);

// p, f(p), ..., f^{n-1}(p) by stepping (compensated for torus maps).
std::vector<Point> orbit(const DynSystem& s, const Point& p, std::size_t n);

double distance(const DynSystem& s, const Point& p, const Point& q);

// Uniform samples: Lebesgue on tori, Fubini-Study on P^k.
std::vector<Point> sample_points(const DynSystem& s, std::size_t count, std::uint64_t seed);
std::vector<Point> grid_points(const DynSystem& s, std::size_t resolution);

enum class SamplerKind { Uniform, Box, LogBox, Affine };

// Pool distributions for the separation estimator.
//  Box: torus-like spaces; coordinates center_i + U(-h_i, h_i), wrapped. An
//       empty center draws one uniformly from the seed.
//  LogBox: projective spaces; coordinate z_i = 10^{u_i} e^{2 pi i phi_i} with
//       u_i ~ U(log10_lo_i, log10_hi_i) and uniform phase, then normalized.
//  Affine: projective spaces; z = origin + sum_i t_i v_i with real t_i drawn
//       uniformly from [lo_i, hi_i], or as 10^{u_i} for log axes. A family
//       with few parameters aimed at an invariant line or a transit region
//       lets greedy counts settle at much smaller pool sizes.
struct AffineAxis {
  std::vector<std::complex<double>> direction;
  double lo = 0.0;
  double hi = 0.0;
  bool log10 = false;
};

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Uniform;
  std::vector<double> center;
  std::vector<double> half_widths;
  std::vector<std::pair<double, double>> log10_ranges;
  std::vector<std::complex<double>> origin;
  std::vector<AffineAxis> axes;
  // Box, LogBox and Affine: shifted Sobol points instead of iid draws.
  bool quasi_random = false;

  void validate(const DynSystem& s) const;
};

std::string to_string(SamplerKind k);
SamplerKind sampler_kind_from_string(const std::string& name);

std::vector<Point> sample_points(const DynSystem& s, const SamplerSpec& spec, std::size_t count,
                                 std::uint64_t seed);

// Operator norm of the differential in the chart metric (l_inf on tori,
// Fubini-Study on P^k).
double derivative_norm(const DynSystem& s, const Point& p);
// Central finite-difference estimate of the same quantity.
double derivative_norm_fd(const DynSystem& s, const Point& p, double h = 1e-6);
// Entry n-1 is max over samples of ||D f^n||, n = 1..n_max.
std::vector<double> max_derivative_norm(const DynSystem& s, std::size_t n_max, const std::vector<Point>& samples);

}  // namespace polyent::zoo
