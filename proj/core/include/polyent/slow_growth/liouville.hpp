#pragma once

// Liouville rotation numbers built from a gap schedule, the skew product
// (x, y) -> (x + alpha, y + g(x)) they drive, and probes for its derivative
// growth and for the cohomological equation h(x + alpha) - h(x) = g(x).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyent/cohomology/int_matrix.hpp"
#include "polyent/zoo/skew.hpp"

namespace polyent::slow_growth {

// Decimal fixed point value in [0, 1) with an explicit digit budget.
// digit(i) is the coefficient of 10^{-(i+1)}.
class DecimalFixed {
 public:
  DecimalFixed() = default;
  explicit DecimalFixed(std::size_t precision) : digits_(precision, 0) {}
  // "0.1001" or ".25"; the integer part must be zero. Digits past `precision` are rejected.
  static DecimalFixed parse(const std::string& text, std::size_t precision);

  std::size_t precision() const { return digits_.size(); }
  int digit(std::size_t i) const { return i < digits_.size() ? digits_[i] : 0; }
  void set_digit(std::size_t i, int d);
  bool is_zero() const;

  // {10^m x}: drop the first m digits.
  DecimalFixed shifted(std::size_t m) const;
  // {k x} by schoolbook multiplication.
  DecimalFixed times_frac(std::uint64_t k) const;

  // Index of the first nonzero digit, if any.
  std::optional<std::size_t> leading_digit() const;
  double to_double() const;
  // Value of the leading `significant` digits as an exact rational.
  Rational to_rational(std::size_t significant = 60) const;
  std::string to_string(std::size_t max_digits = 0) const;

  bool operator==(const DecimalFixed&) const = default;

 private:
  std::vector<std::uint8_t> digits_;
};

class PrecisionShortfall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResonanceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct GapSchedule {
  std::vector<std::uint64_t> q;
  // Upper bound for log10 r, kept exact.
  Rational log10_r{1, 10};
  // Demo schedules do not satisfy the gap inequality and say so.
  bool strict = true;

  // Strict schedules stop after three terms: a fourth gap would exceed 10^100.
  static constexpr std::size_t kMaxStrictTerms = 3;
  static constexpr std::uint64_t kMaxExponent = 100000;

  // log10 r given exactly, e.g. "0.1".
  static GapSchedule with_log10_radius(std::vector<std::uint64_t> q, const std::string& log10_r, bool strict = true);
  // r as a double; the stored log10 r is rounded upward so the gap check stays conservative.
  static GapSchedule with_radius(std::vector<std::uint64_t> q, double r, bool strict = true);

  double r() const;
  // Throws std::invalid_argument on an empty or non-increasing q, or a strict schedule that is too long.
  void validate() const;
};

struct GapCheck {
  bool holds = true;
  // 1-based index j of the first q_j with q_j - q_{j-1} <= log10(r) 10^{q_{j-1}}.
  std::optional<std::size_t> first_violation;
};

GapCheck check_gap_condition(const GapSchedule& schedule);

struct AlphaExpansion {
  DecimalFixed alpha;
  // residues[n] = {10^{q_n} alpha}; the last one is 0 for a finite schedule.
  std::vector<DecimalFixed> residues;
};

// alpha = sum_i 10^{-q_i} to `precision` digits (default 2 q_last + extra_digits).
AlphaExpansion build_alpha(const GapSchedule& schedule, std::size_t extra_digits = 20,
                           std::optional<std::size_t> precision = std::nullopt);

struct SlowMode {
  std::uint64_t k = 1;
  std::complex<double> a;
  // {k alpha} from the decimal expansion.
  DecimalFixed residue;
};

class SlowSkew {
 public:
  // Modes k_n = 10^{q_n}, a_{k_n} = 10^{-(q_{n+1} - q_n)} for every term but the last.
  static SlowSkew from_schedule(const GapSchedule& schedule, std::size_t extra_digits = 20, double amplitude = 1.0);
  // Arbitrary modes over a given decimal alpha; residues come from exact multiplication.
  static SlowSkew custom(DecimalFixed alpha, std::vector<std::pair<std::uint64_t, std::complex<double>>> modes);

  const std::optional<GapSchedule>& schedule() const { return schedule_; }
  const DecimalFixed& alpha() const { return alpha_; }
  const std::vector<SlowMode>& modes() const { return modes_; }
  const zoo::SkewProduct& skew() const { return skew_; }

  // |a_k| <= r^{-k} for every mode, checked exactly (only meaningful with a schedule).
  bool analytic_bound_holds() const;
  // Statement attached to every report about the finite truncation of alpha.
  std::string truncation_note() const;
  // Scales n ~ 1/(2 {k alpha}) where each mode's geometric sum peaks.
  std::vector<double> resonance_scales() const;

 private:
  SlowSkew() = default;
  void rebuild_skew();

  std::optional<GapSchedule> schedule_;
  DecimalFixed alpha_;
  double amplitude_ = 1.0;
  std::vector<SlowMode> modes_;
  zoo::SkewProduct skew_ = zoo::SkewProduct(0.0, {});
};

struct CoboundaryCoefficient {
  std::uint64_t k = 0;
  std::complex<double> a;
  double residue = 0.0;
  std::complex<double> b;
};

struct CoboundaryReport {
  std::vector<CoboundaryCoefficient> coefficients;
  double min_abs_b = 0.0;
  // min |b_k| >= 0.05: the formal solution of the cohomological equation does not decay.
  bool no_decaying_solution = false;
};

inline constexpr double kNoDecayThreshold = 0.05;

// b_k = a_k / (e^{2 pi i k alpha} - 1), evaluated with 50-digit arithmetic.
// Throws ResonanceError when {k alpha} is exactly 0.
CoboundaryReport coboundary_coefficients(const SlowSkew& s);

enum class BirkhoffOf { G, GPrime };
enum class Summation { Closed, Direct };

double birkhoff_sum(const SlowSkew& s, double x, std::uint64_t n, BirkhoffOf of = BirkhoffOf::G,
                    Summation how = Summation::Closed);

// Uniform grid i / m, i < m.
std::vector<double> uniform_grid(std::size_t m);

struct DerivativeGrowthRow {
  std::uint64_t n = 0;
  double max_abs_d = 0.0;
  std::size_t sample_size = 0;
  // max |D_n| / n^{2 tau}, tau = eps_target / 4.
  double bound_ratio = 0.0;
};

struct DerivativeGrowthReport {
  std::vector<DerivativeGrowthRow> table;
  double slope = 0.0;   // fitted on the running max of max_abs_d over the table
  // Fit uses rows with n >= window_start (upper half of the schedule in log scale).
  std::uint64_t window_start = 0;
  double eps_target = 0.0;
  double grid_resolution = 0.0;
  double max_bound_ratio = 0.0;
  // Lipschitz route: h_pol <= slope * dim.
  double lipschitz_hpol_bound = 0.0;
  bool pass = false;
  std::string note;
};

DerivativeGrowthReport derivative_growth_report(const SlowSkew& s, const std::vector<std::uint64_t>& n_schedule,
                                                const std::vector<double>& x_grid, double eps_target);

struct StaircaseRow {
  std::uint64_t n = 0;
  double running_sup = 0.0;
};

struct EquicontinuityProbe {
  std::vector<StaircaseRow> staircase;
  double sup_birkhoff = 0.0;
  // Resonance scales inside [1, N] and the growth factor of the running sup across each.
  std::vector<double> scales;
  std::vector<double> jump_factors;
  bool unbounded_evidence = false;
};

// Running max over n <= big_n of max_x |sum_{j<n} g(x + j alpha)|.
EquicontinuityProbe equicontinuity_probe(const SlowSkew& s, std::uint64_t big_n, const std::vector<double>& x_grid);

}  // namespace polyent::slow_growth
