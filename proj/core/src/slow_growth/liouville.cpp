#include "polyent/slow_growth/liouville.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "polyent/common/numeric.hpp"
#include "polyent/lab/exact_cover.hpp"

namespace polyent::slow_growth {

namespace {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

BigInt pow10(std::uint64_t e) { return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(e)); }

// Largest k with 10^k representable as uint64.
constexpr std::uint64_t kMaxModeExponent = 19;
// a_k = 10^{-gap} must stay a normal double.
constexpr std::uint64_t kMaxAmplitudeGap = 300;

std::uint64_t pow10_u64(std::uint64_t e) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < e; ++i) v *= 10;
  return v;
}

double residue_double(const DecimalFixed& d) {
  const double r = d.to_double();
  return r >= 1.0 ? std::nextafter(1.0, 0.0) : r;
}

Rational log10_upper(double v) {
  return lab::decimal_rational(std::nextafter(std::log10(v), std::numeric_limits<double>::infinity()));
}

}  // namespace

// ---------------------------------------------------------------- DecimalFixed

DecimalFixed DecimalFixed::parse(const std::string& text, std::size_t precision) {
  std::string_view s(text);
  if (s.starts_with("0")) s.remove_prefix(1);
  if (s.empty()) return DecimalFixed(precision);
  if (!s.starts_with(".")) throw std::invalid_argument("DecimalFixed: expected a value in [0, 1): " + text);
  s.remove_prefix(1);
  if (s.size() > precision) {
    // Trailing zeros beyond the budget are harmless.
    if (s.find_first_not_of('0', precision) != std::string_view::npos)
      throw PrecisionShortfall("DecimalFixed: '" + text + "' needs more than " + std::to_string(precision) + " digits");
  }
  DecimalFixed d(precision);
  for (std::size_t i = 0; i < std::min(s.size(), precision); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("DecimalFixed: bad digit in " + text);
    d.digits_[i] = static_cast<std::uint8_t>(s[i] - '0');
  }
  return d;
}

void DecimalFixed::set_digit(std::size_t i, int d) {
  if (i >= digits_.size()) throw PrecisionShortfall("DecimalFixed: digit index beyond precision");
  if (d < 0 || d > 9) throw std::invalid_argument("DecimalFixed: digit out of range");
  digits_[i] = static_cast<std::uint8_t>(d);
}

bool DecimalFixed::is_zero() const {
  return std::all_of(digits_.begin(), digits_.end(), [](std::uint8_t d) { return d == 0; });
}

DecimalFixed DecimalFixed::shifted(std::size_t m) const {
  DecimalFixed out(digits_.size() > m ? digits_.size() - m : 0);
  std::copy(digits_.begin() + static_cast<std::ptrdiff_t>(std::min(m, digits_.size())), digits_.end(),
            out.digits_.begin());
  return out;
}

DecimalFixed DecimalFixed::times_frac(std::uint64_t k) const {
  BigInt v = 0;
  for (auto d : digits_) v = v * 10 + d;
  v = (v * k) % pow10(digits_.size());
  DecimalFixed out(digits_.size());
  for (std::size_t i = digits_.size(); i-- > 0;) {
    out.digits_[i] = static_cast<std::uint8_t>(static_cast<unsigned>(v % 10));
    v /= 10;
  }
  return out;
}

std::optional<std::size_t> DecimalFixed::leading_digit() const {
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i] != 0) return i;
  return std::nullopt;
}

double DecimalFixed::to_double() const {
  const auto lead = leading_digit();
  if (!lead) return 0.0;
  std::string s = "0.";
  for (std::size_t i = *lead; i < std::min(digits_.size(), *lead + 20); ++i) s += static_cast<char>('0' + digits_[i]);
  s += "e-" + std::to_string(*lead);
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

Rational DecimalFixed::to_rational(std::size_t significant) const {
  const auto lead = leading_digit();
  if (!lead) return Rational(0);
  const std::size_t end = std::min(digits_.size(), *lead + significant);
  BigInt m = 0;
  for (std::size_t i = *lead; i < end; ++i) m = m * 10 + digits_[i];
  return Rational(m, pow10(end));
}

std::string DecimalFixed::to_string(std::size_t max_digits) const {
  std::size_t n = digits_.size();
  while (n > 1 && digits_[n - 1] == 0) --n;
  if (max_digits) n = std::min(n, max_digits);
  std::string s = "0.";
  for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) s += static_cast<char>('0' + digit(i));
  return s;
}

// ---------------------------------------------------------------- GapSchedule

GapSchedule GapSchedule::with_log10_radius(std::vector<std::uint64_t> q, const std::string& log10_r, bool strict) {
  GapSchedule g{std::move(q), lab::decimal_rational(log10_r), strict};
  g.validate();
  return g;
}

GapSchedule GapSchedule::with_radius(std::vector<std::uint64_t> q, double r, bool strict) {
  if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("GapSchedule: r must be a finite real > 1");
  GapSchedule g{std::move(q), log10_upper(r), strict};
  g.validate();
  return g;
}

double GapSchedule::r() const { return std::pow(10.0, static_cast<double>(log10_r)); }

void GapSchedule::validate() const {
  if (q.empty()) throw std::invalid_argument("GapSchedule: q must be nonempty");
  if (q.front() == 0) throw std::invalid_argument("GapSchedule: q must be positive");
  for (std::size_t i = 1; i < q.size(); ++i)
    if (q[i] <= q[i - 1]) throw std::invalid_argument("GapSchedule: q must be strictly increasing");
  if (q.back() > kMaxExponent) throw std::invalid_argument("GapSchedule: q_last exceeds the digit budget");
  if (log10_r <= 0) throw std::invalid_argument("GapSchedule: r must exceed 1");
  if (strict && q.size() > kMaxStrictTerms)
    throw std::invalid_argument("GapSchedule: strict schedules are truncated at 3 terms");
}

GapCheck check_gap_condition(const GapSchedule& schedule) {
  schedule.validate();
  GapCheck out;
  for (std::size_t j = 1; j < schedule.q.size(); ++j) {
    const BigInt gap = schedule.q[j] - schedule.q[j - 1];
    if (Rational(gap) <= schedule.log10_r * Rational(pow10(schedule.q[j - 1]))) {
      out.holds = false;
      out.first_violation = j + 1;
      break;
    }
  }
  return out;
}

AlphaExpansion build_alpha(const GapSchedule& schedule, std::size_t extra_digits, std::optional<std::size_t> precision) {
  schedule.validate();
  const std::size_t need = 2 * schedule.q.back() + extra_digits;
  const std::size_t p = precision.value_or(need);
  if (p < need)
    throw PrecisionShortfall("build_alpha: precision " + std::to_string(p) + " < 2*q_last + extra = " +
                             std::to_string(need));
  AlphaExpansion out{DecimalFixed(p), {}};
  for (auto qi : schedule.q) out.alpha.set_digit(qi - 1, 1);
  for (auto qi : schedule.q) out.residues.push_back(out.alpha.shifted(qi));
  return out;
}

// ---------------------------------------------------------------- SlowSkew

SlowSkew SlowSkew::from_schedule(const GapSchedule& schedule, std::size_t extra_digits, double amplitude) {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("SlowSkew: amplitude must be finite");
  const auto exp = build_alpha(schedule, extra_digits);
  SlowSkew s;
  s.schedule_ = schedule;
  s.amplitude_ = std::abs(amplitude);
  s.alpha_ = exp.alpha;
  for (std::size_t n = 0; n + 1 < schedule.q.size(); ++n) {
    const std::uint64_t gap = schedule.q[n + 1] - schedule.q[n];
    if (schedule.q[n] > kMaxModeExponent)
      throw std::invalid_argument("SlowSkew: mode frequency 10^" + std::to_string(schedule.q[n]) + " exceeds 64 bits");
    if (gap > kMaxAmplitudeGap)
      throw std::invalid_argument("SlowSkew: amplitude 10^-" + std::to_string(gap) + " underflows double");
    const double a = amplitude * std::pow(10.0, -static_cast<double>(gap));
    s.modes_.push_back({pow10_u64(schedule.q[n]), {a, 0.0}, exp.residues[n]});
  }
  s.rebuild_skew();
  return s;
}

SlowSkew SlowSkew::custom(DecimalFixed alpha, std::vector<std::pair<std::uint64_t, std::complex<double>>> modes) {
  SlowSkew s;
  s.alpha_ = std::move(alpha);
  for (const auto& [k, a] : modes) {
    if (k == 0) throw std::invalid_argument("SlowSkew: mode k = 0 is not allowed (g has mean zero)");
    s.modes_.push_back({k, a, s.alpha_.times_frac(k)});
  }
  s.rebuild_skew();
  return s;
}

void SlowSkew::rebuild_skew() {
  std::vector<zoo::FourierMode> fm;
  for (const auto& m : modes_) fm.push_back({m.k, m.a, residue_double(m.residue)});
  skew_ = zoo::SkewProduct::with_residues(alpha_.to_double(), std::move(fm));
}

bool SlowSkew::analytic_bound_holds() const {
  if (!schedule_) return false;
  if (amplitude_ == 0.0) return true;
  const auto& q = schedule_->q;
  // log10 |a_k| = log10(amplitude) - gap, with the amplitude term rounded up.
  const Rational log_amp = amplitude_ == 1.0 ? Rational(0) : log10_upper(amplitude_);
  for (std::size_t n = 0; n < modes_.size(); ++n) {
    const Rational log_a = log_amp - Rational(BigInt(q[n + 1] - q[n]));
    if (log_a > -schedule_->log10_r * Rational(pow10(q[n]))) return false;
  }
  return true;
}

std::string SlowSkew::truncation_note() const {
  std::ostringstream os;
  if (!schedule_) {
    os << "custom modes over alpha = " << alpha_.to_string(40) << " (" << alpha_.precision() << " digits)";
    return os.str();
  }
  const auto check = check_gap_condition(*schedule_);
  os << "alpha truncated after q_last = " << schedule_->q.back() << ": rational with denominator 10^"
     << schedule_->q.back() << ", far beyond every horizon used here";
  if (!schedule_->strict || !check.holds) {
    os << "; demo schedule";
    if (check.first_violation) os << " (gap condition fails at index " << *check.first_violation << ")";
    os << ", a mechanism demonstration rather than a verification";
  }
  return os.str();
}

std::vector<double> SlowSkew::resonance_scales() const {
  std::vector<double> out;
  for (const auto& m : modes_) {
    const double r = m.residue.to_double();
    const double rr = std::min(r, 1.0 - r);
    out.push_back(rr > 0 ? 0.5 / rr : std::numeric_limits<double>::infinity());
  }
  return out;
}

// ---------------------------------------------------------------- coboundary

CoboundaryReport coboundary_coefficients(const SlowSkew& s) {
  CoboundaryReport out;
  const HighFloat pi = boost::math::constants::pi<HighFloat>();
  out.min_abs_b = std::numeric_limits<double>::infinity();
  for (const auto& m : s.modes()) {
    if (m.residue.is_zero())
      throw ResonanceError("coboundary_coefficients: e^{2 pi i k alpha} = 1 for k = " + std::to_string(m.k));
    const Rational r = m.residue.to_rational();
    const HighFloat x = pi * HighFloat(boost::multiprecision::numerator(r)) /
                        HighFloat(boost::multiprecision::denominator(r));
    // 1 / (e^{2 pi i r} - 1) = -(1 + i cot(pi r)) / 2
    const HighFloat cot = cos(x) / sin(x);
    const HighFloat ar = m.a.real(), ai = m.a.imag();
    const HighFloat br = -(ar - ai * cot) / 2, bi = -(ai + ar * cot) / 2;
    CoboundaryCoefficient c{m.k, m.a, m.residue.to_double(), {br.convert_to<double>(), bi.convert_to<double>()}};
    out.min_abs_b = std::min(out.min_abs_b, std::abs(c.b));
    out.coefficients.push_back(c);
  }
  if (out.coefficients.empty()) out.min_abs_b = 0.0;
  out.no_decaying_solution = !out.coefficients.empty() && out.min_abs_b >= kNoDecayThreshold;
  return out;
}

// ---------------------------------------------------------------- sums

double birkhoff_sum(const SlowSkew& s, double x, std::uint64_t n, BirkhoffOf of, Summation how) {
  const bool deriv = of == BirkhoffOf::GPrime;
  return how == Summation::Closed ? s.skew().birkhoff_closed(x, n, deriv) : s.skew().birkhoff_direct(x, n, deriv);
}

std::vector<double> uniform_grid(std::size_t m) {
  if (m == 0) throw std::invalid_argument("uniform_grid: need at least one point");
  std::vector<double> g(m);
  for (std::size_t i = 0; i < m; ++i) g[i] = static_cast<double>(i) / static_cast<double>(m);
  return g;
}

DerivativeGrowthReport derivative_growth_report(const SlowSkew& s, const std::vector<std::uint64_t>& n_schedule,
                                                const std::vector<double>& x_grid, double eps_target) {
  if (!(eps_target > 0.0 && eps_target < 1.0))
    throw std::invalid_argument("derivative_growth_report: eps_target must lie in (0, 1)");
  if (x_grid.empty()) throw std::invalid_argument("derivative_growth_report: empty x grid");
  std::vector<std::uint64_t> ns(n_schedule);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  ns.erase(std::remove(ns.begin(), ns.end(), 0u), ns.end());
  if (ns.empty()) throw std::invalid_argument("derivative_growth_report: n schedule needs a positive entry");

  DerivativeGrowthReport rep;
  rep.eps_target = eps_target;
  rep.grid_resolution = 1.0 / static_cast<double>(x_grid.size());
  const double two_tau = eps_target / 2.0;
  for (auto n : ns) {
    double mx = 0.0;
    for (double x : x_grid) mx = std::max(mx, std::abs(s.skew().birkhoff_closed(x, n, true)));
    const double ratio = mx / std::pow(static_cast<double>(n), two_tau);
    rep.table.push_back({n, mx, x_grid.size(), ratio});
    rep.max_bound_ratio = std::max(rep.max_bound_ratio, ratio);
  }
  const double mid = 0.5 * (std::log(static_cast<double>(ns.front())) + std::log(static_cast<double>(ns.back())));
  // Fit the running max over the table: |D_n| itself oscillates with the resonance periods and
  // nearly vanishes at their multiples, so pointwise values alias on a sparse schedule.
  std::vector<double> lx, ly;
  double envelope = 0.0;
  for (const auto& row : rep.table) {
    envelope = std::max(envelope, row.max_abs_d);
    if (std::log(static_cast<double>(row.n)) + 1e-12 < mid || envelope <= 0.0) continue;
    if (lx.empty()) rep.window_start = row.n;
    lx.push_back(std::log(static_cast<double>(row.n)));
    ly.push_back(std::log(envelope));
  }
  rep.slope = lx.size() >= 2 ? fit_line(lx, ly).slope : 0.0;
  if (lx.empty()) rep.window_start = ns.back();
  rep.lipschitz_hpol_bound = std::max(0.0, rep.slope) * 2.0;
  rep.pass = rep.slope <= eps_target;
  rep.note = s.truncation_note() + "; max over a grid of " + std::to_string(x_grid.size()) +
             " points lower-bounds the true sup";
  return rep;
}

EquicontinuityProbe equicontinuity_probe(const SlowSkew& s, std::uint64_t big_n, const std::vector<double>& x_grid) {
  if (big_n < 1000) throw std::invalid_argument("equicontinuity_probe: N must be at least 1000");
  if (x_grid.empty()) throw std::invalid_argument("equicontinuity_probe: empty x grid");

  std::vector<std::uint64_t> checkpoints;
  for (double v = 1.0; v < static_cast<double>(big_n); v *= std::pow(2.0, 0.25)) {
    const auto c = static_cast<std::uint64_t>(std::llround(v));
    if (checkpoints.empty() || c > checkpoints.back()) checkpoints.push_back(c);
  }
  if (checkpoints.back() != big_n) checkpoints.push_back(big_n);
  std::vector<double> sup_at(checkpoints.size(), 0.0);

  const auto& modes = s.skew().modes();
  const double tp = 2.0 * std::numbers::pi;
  std::vector<std::complex<double>> z(modes.size()), w(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) w[i] = std::polar(1.0, tp * modes[i].residue);
  constexpr std::uint64_t kResync = 1024;

  for (double x : x_grid) {
    double sum = 0.0, run = 0.0;
    std::size_t ci = 0;
    for (std::uint64_t j = 0; j < big_n; ++j) {
      if (j % kResync == 0) {
        for (std::size_t i = 0; i < modes.size(); ++i) {
          const double ph = frac(frac_mul(static_cast<double>(modes[i].k), x) +
                                 frac_mul(static_cast<double>(j), modes[i].residue));
          z[i] = 2.0 * modes[i].a * std::polar(1.0, tp * ph);
        }
      }
      for (std::size_t i = 0; i < modes.size(); ++i) {
        sum += z[i].real();
        z[i] *= w[i];
      }
      run = std::max(run, std::abs(sum));  // sum now holds S_{j+1}
      while (ci < checkpoints.size() && checkpoints[ci] == j + 1) {
        sup_at[ci] = std::max(sup_at[ci], run);
        ++ci;
      }
    }
  }

  EquicontinuityProbe out;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) out.staircase.push_back({checkpoints[i], sup_at[i]});
  out.sup_birkhoff = sup_at.back();
  auto sup_before = [&](double n) {
    double v = 0.0;
    for (const auto& row : out.staircase)
      if (static_cast<double>(row.n) <= n) v = row.running_sup;
    return v;
  };
  std::size_t jumps = 0;
  for (double sc : s.resonance_scales()) {
    if (!(sc >= 1.0 && sc <= static_cast<double>(big_n))) continue;
    const double lo = sup_before(std::max(1.0, sc / 10.0));
    const double hi = sup_before(std::min(static_cast<double>(big_n), sc * 10.0));
    const double f = lo > 0 ? hi / lo : (hi > 0 ? std::numeric_limits<double>::infinity() : 1.0);
    out.scales.push_back(sc);
    out.jump_factors.push_back(f);
    if (f >= 1.5) ++jumps;
  }
  out.unbounded_evidence = jumps >= 2;
  return out;
}

}  // namespace polyent::slow_growth
