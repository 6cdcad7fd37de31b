// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: polyent_acceptance [output-dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyent/cohomology/growth.hpp"
#include "polyent/common/numeric.hpp"
#include "polyent/common/random.hpp"
#include "polyent/harness/catalog.hpp"
#include "polyent/harness/suite.hpp"
#include "polyent/lab/bowen.hpp"
#include "polyent/lab/exact_cover.hpp"
#include "polyent/lab/northsouth.hpp"
#include "polyent/lab/recurrence.hpp"
#include "polyent/lab/sandwich.hpp"
#include "polyent/normal_forms/classify.hpp"
#include "polyent/slow_growth/liouville.hpp"

using namespace polyent;
using cohomology::IntMatrix;
using harness::fixed;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Estimate {
  std::optional<double> slope;
  double seconds = 0.0;
  std::string error;
  const lab::ExponentFit* fit = nullptr;
};

std::map<std::string, Estimate> estimates;

std::string describe(const std::string& name) {
  const auto& e = estimates.at(name);
  std::ostringstream os;
  os << name << " " << (e.slope ? fixed(*e.slope, 3) : "none (" + e.error + ")") << " in " << fixed(e.seconds, 0)
     << " s";
  return os.str();
}

bool in(const std::optional<double>& x, double lo, double hi) { return x && *x >= lo && *x <= hi; }

// --- criterion 1 and 2 -------------------------------------------------------

void criterion_1() {
  const auto& shear = estimates.at("shear-T2");
  std::optional<double> at_005;
  if (shear.fit)
    for (const auto& e : shear.fit->per_eps)
      if (std::abs(e.eps - 0.05) < 1e-12 && e.usable) at_005 = e.slope;
  const bool k2 = in(at_005, 0.8, 1.2) && shear.seconds < 120.0;
  const auto& t3 = estimates.at("jordan-T3");
  const bool k3 = in(t3.slope, 2.5, 3.5) && t3.seconds < 600.0;

  // Degree of the symbolic cover count: sum over j = 1..k of (j - 1).
  const auto t0 = Clock::now();
  bool exact = true;
  std::string degrees;
  for (std::size_t k = 2; k <= 6; ++k) {
    std::size_t oracle = 0;
    for (std::size_t j = 1; j <= k; ++j) oracle += j - 1;
    const auto env = lab::cover_count_envelope({k}, Rational(1, 10));
    const auto deg = static_cast<std::size_t>(env.degree());
    exact = exact && deg == oracle && deg == k * (k - 1) / 2;
    exact = exact && lab::real_torus_hpol(cohomology::jordan_block_sizes(IntMatrix::jordan_block(k), 1)) == oracle;
    degrees += (k > 2 ? "," : "") + std::to_string(deg);
  }
  const double exact_s = seconds_since(t0);
  exact = exact && exact_s < 1.0;
  report(1, k2 && k3 && exact,
         "Jordan torus maps: shear slope at eps=0.05 " + (at_005 ? fixed(*at_005, 3) : std::string("none")) + " in " +
             fixed(shear.seconds, 0) + " s (want [0.8,1.2], < 120 s); " + describe("jordan-T3") +
             " (want [2.5,3.5], < 600 s); symbolic degrees k=2..6: " + degrees + " in " + fixed(exact_s, 3) + " s");
}

void criterion_2() {
  const auto& e = estimates.at("e2-product-shear");
  const IntMatrix a = IntMatrix::block_diagonal({IntMatrix::jordan_block(2), IntMatrix::jordan_block(2)});
  const auto real_blocks = cohomology::jordan_block_sizes(a, 1);
  const auto complex_blocks = lab::pair_real_blocks(real_blocks);
  std::size_t oracle = 0;
  for (std::size_t k : complex_blocks) oracle += k * (k - 1);
  const std::size_t value = lab::complex_torus_hpol(complex_blocks);
  const bool pass = in(e.slope, 1.6, 2.4) && value == 2 && oracle == 2 && lab::real_torus_hpol(real_blocks) == 2;
  report(2, pass,
         "complex-torus parabolic: " + describe("e2-product-shear") + " (want [1.6,2.4]); exact block value " +
             std::to_string(value));
}

// --- criterion 3 -------------------------------------------------------------

void criterion_3() {
  using normal_forms::Pgl3Case;
  const Pgl3Case cases[] = {Pgl3Case::Isometry,          Pgl3Case::SaddleDiagonal, Pgl3Case::SaddleJordan,
                            Pgl3Case::MixedDiagonal,     Pgl3Case::ParabolicRotation, Pgl3Case::FullJordan};
  Rng rng(3003);
  std::size_t wrong = 0, total = 0;
  for (const auto c : cases) {
    const Eigen::MatrixXcd rep = normal_forms::representative(c);
    for (int t = 0; t < 500; ++t) {
      const std::complex<double> scale = std::polar(0.5 + 1.5 * uniform01(rng), 2.0 * std::numbers::pi * uniform01(rng));
      const Eigen::MatrixXcd h = scale * normal_forms::random_conjugate(rep, rng(), 20.0);
      const auto got = normal_forms::classify_pgl3(h, 1e-8);
      ++total;
      if (got.ambiguous || got.kind != c) ++wrong;
    }
  }
  const char* names[] = {"pgl3-isometry",       "pgl3-saddle-diagonal",    "pgl3-saddle-jordan",
                         "pgl3-mixed-diagonal", "pgl3-parabolic-rotation", "pgl3-full-jordan"};
  bool concord = true;
  std::string detail;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& e = estimates.at(names[i]);
    const double predicted = normal_forms::predicted_hpol(cases[i]);
    const bool ok = e.slope && std::abs(*e.slope - predicted) <= 0.35 && e.seconds < 180.0;
    concord = concord && ok;
    detail += std::string(i ? "; " : "") + describe(names[i]) + " vs " + fixed(predicted, 0);
  }
  report(3, wrong == 0 && concord,
         "PGL3: " + std::to_string(wrong) + " misclassified of " + std::to_string(total) +
             " conjugated and scaled normal forms at tol 1e-8; estimates (want +-0.35, < 180 s each): " + detail);
}

// --- criterion 4 and 5 -------------------------------------------------------

void criterion_4() {
  const auto& full = estimates.at("north-south-P1");
  const auto& restricted = estimates.at("north-south-P1-restricted");
  const bool pass = in(full.slope, 0.8, 1.2) && restricted.slope && *restricted.slope <= 0.15;
  report(4, pass,
         "north-south on P1: full " + describe("north-south-P1") + " (want [0.8,1.2]); restricted " +
             describe("north-south-P1-restricted") + " (want <= 0.15)");
}

void criterion_5(const harness::Catalog& catalog) {
  bool pass = true;
  std::string detail;
  std::size_t checked = 0;
  for (const auto& s : catalog.systems) {
    if (!s.cohomology) continue;
    const auto bound = harness::cohomology_upper_bound(s);
    const auto it = estimates.find(s.name);
    if (!bound || it == estimates.end()) continue;
    const bool ok = it->second.slope && *it->second.slope <= static_cast<double>(*bound) + 0.2;
    pass = pass && ok;
    ++checked;
    detail += (detail.empty() ? "" : ", ") + s.name + " " +
              (it->second.slope ? fixed(*it->second.slope, 2) : std::string("none")) + "<=" + std::to_string(*bound);
  }
  cohomology::CohomologyAction threefold{3,
                                         {{0, IntMatrix::identity(1), 1},
                                          {1, IntMatrix::jordan_block(5), 5},
                                          {2, IntMatrix::jordan_block(5), 5},
                                          {3, IntMatrix::identity(1), 1}}};
  const auto p = cohomology::growth_profile(threefold);
  const bool values = p.bounds && p.bounds->gromov_sum == 11 && p.bounds->small_dim && *p.bounds->small_dim == 9;
  report(5, pass && values && checked > 0,
         "upper bounds on " + std::to_string(checked) + " systems with cohomology data (estimate <= bound + 0.2): " +
             detail + "; threefold k=3, s1=s2=4 bounds " + std::to_string(p.bounds->gromov_sum) + " and " +
             std::to_string(p.bounds->small_dim.value_or(-1)));
}

// --- criterion 6 -------------------------------------------------------------

IntMatrix random_unimodular(std::size_t n, Rng& rng) {
  IntMatrix p = IntMatrix::identity(n);
  if (n < 2) return p;
  for (int s = 0; s < 8; ++s) {
    const std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(n);
    e(i, j) = static_cast<long long>(rng() % 5) - 2;
    p = p * e;
  }
  return p;
}

// Kronecker product of integer matrices.
IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  IntMatrix k(n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t r = 0; r < b.dim(); ++r)
        for (std::size_t c = 0; c < b.dim(); ++c) k(i * b.dim() + r, j * b.dim() + c) = a(i, j) * b(r, c);
  return k;
}

IntMatrix companion_of(const std::vector<long long>& low_to_high_monic) {
  std::vector<BigInt> c;
  for (long long v : low_to_high_monic) c.emplace_back(v);
  return IntMatrix::companion(c);
}

// Numerical oracle: +1 all eigenvalues within 1e-3 of the unit circle, -1 one above 1 + 1e-3, 0 undecided.
int numerical_oracle(const IntMatrix& m) {
  Eigen::MatrixXd d(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) d(i, j) = m.entry_as_double(i, j);
  const Eigen::VectorXcd ev = d.eigenvalues();
  double big = 0.0;
  bool on_circle = true;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double r = std::abs(ev[i]);
    big = std::max(big, r);
    // Defective eigenvalues spread like delta^(1/size); the corpus stays well inside 1e-3 at these sizes.
    on_circle = on_circle && std::abs(r - 1.0) <= 1e-3;
  }
  if (big > 1.0 + 1e-3) return -1;
  return on_circle ? 1 : 0;
}

void criterion_6() {
  Rng rng(6006);
  // Finite-order building blocks: companions of cyclotomic polynomials and signed identities.
  const std::vector<std::vector<long long>> cyclo = {{-1, 1},        {1, 1},    {1, 1, 1},        {1, 0, 1},
                                                     {1, -1, 1},     {1, 1, 1, 1, 1}, {1, 0, 0, 0, 1}, {1, -1, 1, -1, 1},
                                                     {1, 0, -1, 0, 1}, {1, 1, 1, 1, 1, 1, 1}, {1, -1, 0, 1, -1, 0, 1},
                                                     {1, 0, 1, 0, 1}};
  std::size_t errors = 0, undecided = 0, nilpotency_failures = 0, total = 0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    IntMatrix m;
    if (trial % 2 == 0) {
      // (a) conjugated commuting products of finite-order and unipotent blocks, dim <= 6.
      std::vector<IntMatrix> blocks;
      std::size_t dim = 0;
      const std::size_t target = 1 + rng() % 6;
      while (dim < target) {
        const auto& c = cyclo[rng() % cyclo.size()];
        const std::size_t deg = c.size() - 1;
        if (dim + deg > target) {
          if (deg == 1 || dim + 1 > target) break;
          continue;
        }
        const std::size_t room = (target - dim) / deg;
        const std::size_t jordan = 1 + rng() % room;
        IntMatrix f = companion_of(c);
        f = f.pow(1 + rng() % 3);
        blocks.push_back(kron(f, IntMatrix::jordan_block(jordan)));
        dim += deg * jordan;
      }
      if (blocks.empty()) blocks.push_back(IntMatrix::jordan_block(target));
      m = IntMatrix::block_diagonal(blocks);
      const IntMatrix p = random_unimodular(m.dim(), rng);
      m = p * m * p.unimodular_inverse();
    } else {
      // (b) companion of (t^2 - a t + s) q(t) with |a| >= 3, so a real root exceeds 1 in modulus.
      const long long a = 3 + static_cast<long long>(rng() % 5);
      const long long sgn = (rng() % 2) ? 1 : -1;
      std::vector<long long> p = {sgn, -a * ((rng() % 2) ? 1 : -1), 1};
      const std::size_t extra = rng() % 5;
      std::vector<long long> q(extra + 1, 0);
      for (auto& v : q) v = static_cast<long long>(rng() % 7) - 3;
      q.back() = 1;
      std::vector<long long> prod(p.size() + q.size() - 1, 0);
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) prod[i + j] += p[i] * q[j];
      m = companion_of(prod);
      if (rng() % 2) {
        const IntMatrix u = random_unimodular(m.dim(), rng);
        m = u * m * u.unimodular_inverse();
      }
    }
    ++total;
    const auto verdict = cohomology::unit_circle_test(cohomology::characteristic_polynomial(m));
    const int oracle = numerical_oracle(m);
    if (oracle == 0) {
      ++undecided;
      continue;
    }
    if (verdict.all_roots_of_unity() != (oracle == 1)) ++errors;
    if (verdict.all_roots_of_unity() && verdict.zero_root_multiplicity == 0) {
      const std::uint64_t order = cohomology::unipotency_order(m);
      IntMatrix nil = m.pow(order) - IntMatrix::identity(m.dim());
      if (!nil.pow(m.dim()).is_zero()) ++nilpotency_failures;
    }
  }
  report(6, errors == 0 && nilpotency_failures == 0 && undecided == 0,
         "Kronecker test on " + std::to_string(total) + " matrices: " + std::to_string(errors) +
             " disagreements with the numerical oracle, " + std::to_string(undecided) + " undecided, " +
             std::to_string(nilpotency_failures) + " failures of (M^m - I)^dim = 0, " + fixed(seconds_since(t0), 1) +
             " s");
}

// --- criterion 7 -------------------------------------------------------------

void criterion_7() {
  const auto t0 = Clock::now();
  using namespace slow_growth;
  const auto strict_schedule = GapSchedule::with_log10_radius({1, 3, 104}, "0.1", true);
  const bool gap = check_gap_condition(strict_schedule).holds;
  const SlowSkew strict = SlowSkew::from_schedule(strict_schedule);

  // max_x |D_n| oscillates with the period 1/{10 alpha} ~ 100 and nearly vanishes at multiples of it, so
  // pointwise values on a sparse log grid alias. The growth statement concerns sup_{m <= n} ||D f^m||;
  // that running sup is evaluated at every m and fitted on log-spaced n. The library report is printed alongside.
  const auto grid = uniform_grid(256);
  std::vector<std::uint64_t> ns;
  for (double n = 1000.0; n <= 100000.0 * 1.0001; n *= std::pow(10.0, 0.125))
    ns.push_back(static_cast<std::uint64_t>(std::llround(n)));
  std::vector<double> xs, ys;
  double running = 0.0;
  std::size_t next = 0;
  for (std::uint64_t m = 1; m <= ns.back(); ++m) {
    for (double x : grid)
      running = std::max(running, std::abs(slow_growth::birkhoff_sum(strict, x, m, BirkhoffOf::GPrime)));
    if (m == ns[next]) {
      xs.push_back(std::log(static_cast<double>(m)));
      ys.push_back(std::log(running));
      ++next;
    }
  }
  const double slope = fit_line(xs, ys).slope;
  const double report_slope = derivative_growth_report(strict, ns, uniform_grid(4096), 0.25).slope;

  const auto cob = coboundary_coefficients(strict);
  double min_b = 1e300;
  for (std::size_t i = 0; i < cob.coefficients.size(); ++i) min_b = std::min(min_b, std::abs(cob.coefficients[i].b));

  const SlowSkew demo = SlowSkew::from_schedule(GapSchedule::with_log10_radius({1, 2, 4, 8, 16}, "0.1", false));
  const auto probe = equicontinuity_probe(demo, 100000, uniform_grid(256));
  std::string jumps;
  for (std::size_t i = 0; i < probe.scales.size(); ++i)
    jumps += (i ? ", " : "") + fixed(probe.scales[i], 0) + ":" + fixed(probe.jump_factors[i], 2);
  const double secs = seconds_since(t0);
  const bool pass = gap && slope <= 0.25 && min_b >= 0.05 && probe.unbounded_evidence && secs < 180.0;
  report(7, pass,
         "Liouville skew product: gap condition " + std::string(gap ? "holds" : "fails") +
             " for q=(1,3,104); slope of log sup_{m<=n} max_x|D_m| over n in [1e3,1e5] " + fixed(slope, 3) +
             " (want <= 0.25; pointwise upper-half fit " + fixed(report_slope, 3) + ", sup " + fixed(std::exp(ys.back()), 3) +
             "); min |b_k| " + fixed(min_b, 4) + " (want >= 0.05); demo staircase jumps at resonance scales {" +
             jumps + "}, unbounded evidence " + (probe.unbounded_evidence ? "true" : "false") + "; " + fixed(secs, 1) +
             " s");
}

// --- criterion 8 -------------------------------------------------------------

std::vector<std::pair<std::string, zoo::DynSystem>> metric_spaces() {
  using C = std::complex<double>;
  Eigen::MatrixXcd ns(2, 2);
  ns << 1.25, 0, 0, 1;
  Eigen::MatrixXcd j3(3, 3);
  j3 << 1, 1, 0, 0, 1, 1, 0, 0, 1;
  const C b = std::polar(1.0, 2.0 * std::numbers::pi * std::sqrt(3.0));
  Eigen::MatrixXcd rot(3, 3);
  rot << b, 1, 0, 0, b, 0, 0, 0, 1;
  return {{"T2 shear", zoo::TorusAffineMap(IntMatrix{{1, 1}, {0, 1}})},
          {"T3 Jordan", zoo::TorusAffineMap(IntMatrix::jordan_block(3), {0.1, 0.2, 0.3})},
          {"P1 north-south", zoo::ProjectiveMap(1, ns)},
          {"P2 Jordan", zoo::ProjectiveMap(2, j3)},
          {"P2 parabolic rotation", zoo::ProjectiveMap(2, rot)},
          {"skew product", zoo::SkewProduct(0.6180339887498949, {{1, {0.25, 0.1}}, {3, {0.05, 0.0}}})}};
}

void criterion_8(const harness::SuiteReport& suite) {
  const auto spaces = metric_spaces();
  Rng rng(8008);

  std::size_t sandwich_fail = 0;
  for (int t = 0; t < 100; ++t) {
    const auto& s = spaces[static_cast<std::size_t>(t) % spaces.size()].second;
    const auto pool = zoo::sample_points(s, 24 + rng() % 40, rng());
    const std::size_t n = 1 + rng() % 24;
    const double eps = 0.05 + 0.3 * uniform01(rng);
    if (!lab::sandwich_check(s, pool, n, eps).holds()) ++sandwich_fail;
  }

  bool monotone = true;
  std::size_t curves = 0;
  for (const auto& run : suite.runs)
    if (run.curve) {
      ++curves;
      monotone = monotone && run.curve->bowen_monotone;
    }
  std::size_t profile_fail = 0;
  for (const auto& [name, s] : spaces) {
    const auto pts = zoo::sample_points(s, 200, rng());
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      const auto prof = lab::bowen_profile(s, pts[i], pts[i + 1], 200);
      for (std::size_t k = 1; k < prof.size(); ++k)
        if (prof[k] < prof[k - 1]) ++profile_fail;
    }
  }

  double worst_birkhoff = 0.0;
  {
    const zoo::SkewProduct sk(0.6180339887498949, {{1, {0.25, 0.1}}, {2, {0.05, -0.02}}, {7, {0.01, 0.0}}});
    for (int t = 0; t < 200; ++t) {
      const double x = uniform01(rng);
      const std::uint64_t n = 1 + rng() % 10000;
      for (bool deriv : {false, true}) {
        const double c = sk.birkhoff_closed(x, n, deriv), d = sk.birkhoff_direct(x, n, deriv);
        worst_birkhoff = std::max(worst_birkhoff, std::abs(c - d) / std::max(1.0, std::abs(d)));
      }
    }
    const auto strict = slow_growth::SlowSkew::from_schedule(slow_growth::GapSchedule::with_log10_radius({1, 3, 104}, "0.1"));
    for (int t = 0; t < 100; ++t) {
      const double x = uniform01(rng);
      const std::uint64_t n = 1 + rng() % 10000;
      const double c = slow_growth::birkhoff_sum(strict, x, n, slow_growth::BirkhoffOf::G, slow_growth::Summation::Closed);
      const double d = slow_growth::birkhoff_sum(strict, x, n, slow_growth::BirkhoffOf::G, slow_growth::Summation::Direct);
      worst_birkhoff = std::max(worst_birkhoff, std::abs(c - d) / std::max(1.0, std::abs(d)));
    }
  }

  std::size_t axiom_fail = 0;
  for (const auto& [name, s] : spaces) {
    const auto pts = zoo::sample_points(s, 30000, rng());
    for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
      const auto &x = pts[i], &y = pts[i + 1], &z = pts[i + 2];
      const double dxy = zoo::distance(s, x, y), dyx = zoo::distance(s, y, x);
      const double dxz = zoo::distance(s, x, z), dyz = zoo::distance(s, y, z);
      if (zoo::distance(s, x, x) > 1e-12 || dxy < 0.0 || std::abs(dxy - dyx) > 1e-12 || dxz > dxy + dyz + 1e-12)
        ++axiom_fail;
    }
  }
  const bool pass = sandwich_fail == 0 && monotone && profile_fail == 0 && worst_birkhoff <= 1e-9 && axiom_fail == 0;
  report(8, pass,
         "separation properties: sandwich failures " + std::to_string(sandwich_fail) + "/100 pools; d_n monotone on " +
             std::to_string(curves) + " estimator runs " + (monotone ? "yes" : "no") + " and " +
             std::to_string(profile_fail) + " profile decreases; Birkhoff closed vs direct worst " +
             fixed(worst_birkhoff * 1e12, 3) + "e-12 (want <= 1e-9); metric axiom failures " +
             std::to_string(axiom_fail) + " on 1e4 triples x " + std::to_string(spaces.size()) + " spaces");
}

// --- criterion 9 and 10 ------------------------------------------------------

void criterion_9() {
  bool pass = true;
  std::string detail;
  std::uint64_t prev = 0;
  for (std::size_t n : {250, 500, 1000, 2000}) {
    lab::NorthSouthParams p;
    p.eps = 0.1;
    p.n = n;
    const lab::NorthSouthCover cover(p);
    const auto v = cover.verify(10000, 900 + n);
    pass = pass && v.verified && v.samples == 10000;
    detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " size " +
              std::to_string(cover.size()) + (v.verified ? " covers" : " FAILS");
    if (prev) {
      const double ratio = static_cast<double>(cover.size()) / static_cast<double>(prev);
      pass = pass && ratio <= 2.2;
      detail += " ratio " + fixed(ratio, 3);
    }
    prev = cover.size();
  }
  report(9, pass, "north-south skew cover at eps=0.1 on 1e4 random points: " + detail + " (want ratio <= 2.2)");
}

void criterion_10(const harness::Catalog& catalog) {
  const std::vector<std::size_t> horizons{1000, 10000, 100000};
  bool pass = true;
  std::string detail;
  std::size_t isometric = 0;
  for (const auto& s : catalog.systems) {
    if (!s.isometric || !s.system) continue;
    ++isometric;
    const auto pool = zoo::sample_points(s.dyn(), 300, harness::system_seed(10, s.name));
    const auto scan = lab::recurrence_scan(s.dyn(), 0.1, horizons, pool);
    const auto& last = scan.profiles.back();
    const bool ok = last.fraction_nonreturning == 0.0 && scan.stable;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + s.name + " nonreturning " + fixed(last.fraction_nonreturning, 3) +
              " max first return " + std::to_string(last.max_first_return) + (scan.stable ? " stable" : " unstable");
  }
  const auto& ns = catalog.at("north-south-P1");
  const auto pool = zoo::sample_points(ns.dyn(), 2000, harness::system_seed(10, ns.name));
  const auto scan = lab::recurrence_scan(ns.dyn(), 0.1, horizons, pool);
  const auto& last = scan.profiles.back();
  pass = pass && isometric > 0 && last.wandering_certificate();
  report(10, pass,
         "recurrence at eps=0.1: " + detail + "; north-south nonreturning " + fixed(last.fraction_nonreturning, 4) +
             (last.wandering_certificate() ? " (wandering certificate, h_pol >= 1)" : " (no certificate)"));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out = argc > 1 ? argv[1] : "acceptance_out";
  const auto& catalog = harness::builtin_catalog();

  harness::SuiteConfig cfg;
  cfg.name = "acceptance";
  cfg.seed = 1;
  for (const auto& s : catalog.systems)
    if (s.estimator) cfg.entries.push_back({s.name, {}});
  std::printf("running %zu catalog estimates...\n", cfg.entries.size());
  std::fflush(stdout);
  const auto suite = harness::run_suite(cfg, catalog);
  harness::write_suite_outputs(suite, out);
  for (std::size_t i = 0; i < suite.runs.size(); ++i) {
    const auto& run = suite.runs[i];
    Estimate e;
    e.seconds = run.seconds;
    e.error = run.error;
    if (run.fit) {
      e.slope = run.fit->slope;
      e.fit = &*run.fit;
    }
    estimates[run.system] = e;
    std::printf("  %-28s %s  %s\n", run.system.c_str(), e.slope ? fixed(*e.slope, 3).c_str() : "-",
                harness::to_string(suite.rows[i].verdict).c_str());
  }

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5(catalog);
  criterion_6();
  criterion_7();
  criterion_8(suite);
  criterion_9();
  criterion_10(catalog);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
