#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "polyent/common/random.hpp"
#include "polyent/lab/bowen.hpp"
#include "polyent/lab/coding.hpp"
#include "polyent/lab/exact_cover.hpp"
#include "polyent/lab/northsouth.hpp"
#include "polyent/lab/recurrence.hpp"
#include "polyent/lab/sandwich.hpp"
#include "polyent/lab/separation.hpp"

using namespace polyent;
using namespace polyent::lab;
using cohomology::IntMatrix;
using zoo::DynSystem;
using zoo::Point;

namespace {

DynSystem shear() { return zoo::TorusAffineMap(IntMatrix{{1, 1}, {0, 1}}); }
DynSystem rotation2() {
  return zoo::TorusAffineMap(IntMatrix::identity(2), {std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0});
}
DynSystem identity2() { return zoo::TorusAffineMap(IntMatrix::identity(2)); }

DynSystem north_south() {
  Eigen::MatrixXcd h(2, 2);
  h << 2.0, 0.0, 0.0, 1.0;
  return zoo::ProjectiveMap(1, h);
}

std::vector<DynSystem> separation_corpus() {
  Eigen::MatrixXcd j3(3, 3);
  j3 << 1, 1, 0, 0, 1, 1, 0, 0, 1;
  return {shear(),
          rotation2(),
          zoo::TorusAffineMap(IntMatrix::jordan_block(3), {0.1, 0.2, 0.3}),
          zoo::TorusAffineMap(IntMatrix::jordan_block(4)),
          zoo::TorusAffineMap(IntMatrix{{2, 1}, {1, 1}}),
          zoo::TorusAffineMap(IntMatrix{{0, -1}, {1, 0}}, {0.25, 0.0}),
          north_south(),
          zoo::ProjectiveMap(2, j3),
          zoo::SkewProduct(0.3819660112501051, {{1, zoo::Complex(0.3, 0.1)}})};
}

// Brute-force check that idx is a maximal eps-separated subset of the pool.
void check_maximal_separated(const DynSystem& s, const std::vector<Point>& pool, std::size_t n, double eps,
                             const std::vector<std::size_t>& idx) {
  const auto dist = bowen_distance_matrix(s, pool, n);
  const std::size_t m = pool.size();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) CHECK(dist[idx[a] * m + idx[b]] > eps);
  for (std::size_t i = 0; i < m; ++i) {
    bool covered = false;
    for (std::size_t j : idx) covered = covered || dist[i * m + j] <= eps;
    CHECK(covered);
  }
}

}  // namespace

TEST_CASE("bowen distance examples") {
  const Point p{0.0, 0.0}, q{0.0, 0.001};
  CHECK(bowen_distance(shear(), p, q, 1) == doctest::Approx(zoo::distance(shear(), p, q)));
  CHECK(bowen_distance(shear(), p, q, 101) == doctest::Approx(0.1).epsilon(1e-9));
  const Point a{0.1, 0.7}, b{0.35, 0.2};
  CHECK(bowen_distance(rotation2(), a, b, 500) == doctest::Approx(zoo::distance(rotation2(), a, b)).epsilon(1e-9));
  CHECK_THROWS_AS(bowen_distance(shear(), a, b, 0), std::invalid_argument);
}

TEST_CASE("bowen profile is non-decreasing") {
  for (const auto& s : separation_corpus()) {
    const auto pool = zoo::sample_points(s, 20, 3);
    for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
      const auto prof = bowen_profile(s, pool[i], pool[i + 1], 300);
      for (std::size_t j = 1; j < prof.size(); ++j) CHECK(prof[j] >= prof[j - 1]);
      CHECK(prof[0] == doctest::Approx(zoo::distance(s, pool[i], pool[i + 1])));
    }
  }
}

TEST_CASE("spread time order is a permutation starting at the ends") {
  for (std::size_t n : {1, 2, 3, 7, 64, 100}) {
    auto order = spread_time_order(n);
    REQUIRE(order.size() == n);
    CHECK(order[0] == n - 1);
    if (n > 1) CHECK(order[1] == 0);
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(order[i] == i);
  }
}

TEST_CASE("greedy set is maximal separated on every space") {
  for (const auto& s : separation_corpus()) {
    const auto pool = zoo::sample_points(s, 300, 17);
    for (std::size_t n : {1, 5, 40})
      for (double eps : {0.3, 0.1}) {
        const auto idx = greedy_separated_indices(s, pool, n, eps);
        CHECK(idx.size() == greedy_separated_count(s, pool, n, eps).greedy_count);
        check_maximal_separated(s, pool, n, eps, idx);
      }
  }
}

TEST_CASE("greedy count examples") {
  const auto pool = zoo::sample_points(shear(), 2000, 1);
  CHECK(greedy_separated_count(shear(), pool, 50, 0.6).greedy_count == 1);

  const auto rpool = zoo::sample_points(rotation2(), 20000, 2);
  const double c16 = static_cast<double>(greedy_separated_count(rotation2(), rpool, 16, 0.1).greedy_count);
  const double c512 = static_cast<double>(greedy_separated_count(rotation2(), rpool, 512, 0.1).greedy_count);
  CHECK(std::abs(c512 - c16) <= 0.05 * c16);

  // Ratio predicted by the exact lattice count 11 (10 n + 1).
  const double oracle = static_cast<double>(cover_count_for_blocks({2}, 128, Rational(1, 10))) /
                        static_cast<double>(cover_count_for_blocks({2}, 64, Rational(1, 10)));
  const auto spool = zoo::sample_points(shear(), 100000, 3);
  const double r = static_cast<double>(greedy_separated_count(shear(), spool, 128, 0.1).greedy_count) /
                   static_cast<double>(greedy_separated_count(shear(), spool, 64, 0.1).greedy_count);
  CHECK(std::abs(r - oracle) <= 0.2 * oracle);
}

TEST_CASE("memory budget is reported, never silent") {
  const auto pool = zoo::sample_points(north_south(), 5000, 4);
  const auto r = greedy_separated_count(north_south(), pool, 2000, 0.01, 0);
  CHECK(r.budget_exceeded);
  CHECK_FALSE(r.saturated);
  CHECK(r.pool_used < pool.size());
}

TEST_CASE("separation curve is deterministic and monotone") {
  BowenParams p;
  p.eps_list = {0.2, 0.1};
  p.n_schedule = {8, 16, 32, 64};
  p.pool_size = 3000;
  p.seed = 9;
  p.workers = 1;
  const auto a = separation_curve(shear(), p, "shear");
  p.workers = 3;
  const auto b = separation_curve(shear(), p, "shear");
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].sep_count == b.records[i].sep_count);
    CHECK(a.records[i].saturated == b.records[i].saturated);
  }
  CHECK(a.bowen_monotone);
  for (std::size_t e = 0; e < 2; ++e)
    for (std::size_t i = 1; i < 4; ++i) CHECK(a.records[e * 4 + i].sep_count >= a.records[e * 4 + i - 1].sep_count);
  for (std::size_t i = 0; i < 4; ++i) CHECK(a.records[4 + i].sep_count >= a.records[i].sep_count);
}

TEST_CASE("bowen params validation") {
  BowenParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.schedule().front() == 16);
  CHECK(p.schedule().back() == 4096);
  p.eps_list = {0.1, 0.2};
  CHECK_THROWS(p.validate());
  p.eps_list = {0.1};
  p.n_schedule = {4, 4};
  CHECK_THROWS(p.validate());
  p.n_schedule = {4, 8};
  p.pool_size = 999;
  CHECK_THROWS(p.validate());
  const auto g = BowenParams::geometric_schedule(128, 512, std::pow(2.0, 0.25));
  CHECK(g.size() == 9);
  CHECK(g.back() == 512);
}

TEST_CASE("fit refuses short windows") {
  BowenParams p;
  p.eps_list = {0.2};
  p.n_schedule = {8, 16, 32};
  p.pool_size = 2000;
  CHECK_THROWS_AS(estimate_hpol(rotation2(), p), InsufficientData);
}

TEST_CASE("rotation exponent is near zero") {
  BowenParams p;
  p.eps_list = {0.2, 0.1};
  p.n_schedule = BowenParams::geometric_schedule(16, 1024);
  p.pool_size = 20000;
  const auto fit = estimate_hpol(rotation2(), p, "rotation");
  CHECK(fit.slope <= 0.15);
  CHECK(fit.r_squared >= 0.0);
  CHECK(fit.r_squared <= 1.0);
  CHECK_FALSE(fit.caveat.empty());
}

TEST_CASE("restricted estimates") {
  BowenParams p;
  p.eps_list = {0.2, 0.1};
  p.n_schedule = {8, 16, 32, 64};
  p.pool_size = 2000;
  p.restriction = [](const Point& x) { return x[0] < 0.0; };
  p.restriction_label = "empty";
  CHECK_THROWS_AS(draw_pool(shear(), p), std::invalid_argument);
  p.restriction = [](const Point& x) { return x[0] < 0.05; };
  p.restriction_label = "thin";
  CHECK_THROWS_AS(draw_pool(shear(), p), std::invalid_argument);
  p.restriction = [](const Point& x) { return x[0] < 0.5; };
  const auto pool = draw_pool(shear(), p);
  CHECK(pool.size() == 2000);
  for (const auto& x : pool) CHECK(x[0] < 0.5);

  // A single-point restriction: every draw is the same point.
  p.restriction = {};
  p.sampler.kind = zoo::SamplerKind::Box;
  p.sampler.center = {0.3, 0.6};
  p.sampler.half_widths = {1e-300, 1e-300};
  const auto curve = separation_curve(shear(), p);
  for (const auto& r : curve.records) CHECK(r.sep_count == 1);
}

TEST_CASE("decimal rationals") {
  CHECK(decimal_rational("0.1") == Rational(1, 10));
  CHECK(decimal_rational("5e-2") == Rational(1, 20));
  CHECK(decimal_rational("-1.25") == Rational(-5, 4));
  CHECK(decimal_rational("1/8") == Rational(1, 8));
  CHECK(decimal_rational(0.1) == Rational(1, 10));
  CHECK(decimal_rational(0.05) == Rational(1, 20));
  CHECK_THROWS(decimal_rational("abc"));
  CHECK_THROWS(decimal_rational("0.1x"));
}

TEST_CASE("exact unipotent cover count") {
  for (std::uint64_t n : {1, 7, 64, 1000})
    CHECK(exact_unipotent_cover_count(IntMatrix{{1, 1}, {0, 1}}, n, Rational(1, 10)) == BigInt(11 * (10 * n + 1)));
  const BigInt c = exact_unipotent_cover_count(IntMatrix::identity(3), 5, Rational(1, 10));
  CHECK(c == exact_unipotent_cover_count(IntMatrix::identity(3), 500, Rational(1, 10)));
  CHECK(c == BigInt(1331));
  CHECK_THROWS_AS(exact_unipotent_cover_count(IntMatrix{{2, 1}, {1, 1}}, 3, Rational(1, 10)), std::domain_error);
  // Conjugating by a unimodular matrix keeps the Jordan type, hence the count.
  const IntMatrix p{{2, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  const IntMatrix j = IntMatrix::jordan_block(3);
  CHECK(exact_unipotent_cover_count(p * j * p.unimodular_inverse(), 50, Rational(1, 20)) ==
        exact_unipotent_cover_count(j, 50, Rational(1, 20)));
}

TEST_CASE("cover count degree is k(k-1)/2") {
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto env = cover_count_envelope({k}, Rational(1, 10));
    CHECK(env.degree() == static_cast<long>(k * (k - 1) / 2));
    CHECK(real_torus_hpol({k}) == k * (k - 1) / 2);
    // The exact count sits below the envelope and above envelope minus the
    // floor losses; both agree on the growth degree through the ratio at 2n.
    const std::uint64_t n = 4000;
    const double ratio = static_cast<double>(cover_count_for_blocks({k}, 2 * n, Rational(1, 10))) /
                         static_cast<double>(cover_count_for_blocks({k}, n, Rational(1, 10)));
    CHECK(std::log2(ratio) == doctest::Approx(static_cast<double>(k * (k - 1) / 2)).epsilon(0.01));
    CHECK(Rational(cover_count_for_blocks({k}, n, Rational(1, 10))) <= env.evaluate(Rational(n)));
  }
  CHECK(cover_count_envelope({2, 3}, Rational(1, 10)).degree() == 4);
}

TEST_CASE("complex torus exponent") {
  CHECK(complex_torus_hpol(pair_real_blocks({2, 2})) == 2);
  CHECK(real_torus_hpol({2, 2}) == 2);
  CHECK(complex_torus_hpol({3, 1}) == 6);
  CHECK(pair_real_blocks({3, 1, 3, 1}) == std::vector<std::size_t>{3, 1});
  CHECK_THROWS(pair_real_blocks({2, 1}));
}

TEST_CASE("exact independent and dominating sets on a path") {
  // Points 0, 1, 2, 3 on a line with unit spacing; eps = 1 joins neighbours.
  std::vector<double> d(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d[i * 4 + j] = std::abs(i - j);
  CHECK(max_separated_exact(d, 4, 1.0) == 2);
  CHECK(min_cover_exact(d, 4, 1.0) == 2);
  CHECK(max_separated_exact(d, 4, 0.5) == 4);
  CHECK(min_cover_exact(d, 4, 3.0) == 1);
  CHECK(max_separated_exact(d, 4, 2.0) == 2);
  CHECK(min_cover_exact(d, 4, 2.0) == 1);
}

TEST_CASE("sandwich inequalities on random pools") {
  const auto corpus = separation_corpus();
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const auto& s = corpus[static_cast<std::size_t>(trial) % corpus.size()];
    const auto pool = zoo::sample_points(s, 40, 100 + static_cast<std::uint64_t>(trial));
    const std::size_t n = 1 + rng() % 20;
    const double eps = 0.05 + 0.3 * uniform01(rng);
    const auto r = sandwich_check(s, pool, n, eps);
    CHECK(r.holds());
  }
}

TEST_CASE("coding growth") {
  CodingParams params;
  params.n_schedule = {4, 8, 16};
  params.pool_size = 500;
  const auto everything = Region::from_predicate([](const Point&) { return true; }, "all");
  const auto res = coding_growth(shear(), {everything}, params);
  for (const auto& r : res.records) CHECK(r.words == 1);
  CHECK(res.fit.slope == doctest::Approx(0.0));

  // Two regions that both contain everything double the words per step.
  params.max_words_per_point = 100;
  CHECK_THROWS_AS(coding_growth(shear(), {everything, everything}, params), BranchingExplosion);

  params.max_words_per_point = 4096;
  params.n_schedule = {2, 4};
  std::vector<Region> many(5, everything);
  const auto capped = coding_growth(shear(), many, params);
  CHECK(capped.cap_binding);
  CHECK(capped.records.back().words == 256);

  const auto ball = Region::ball({0.5, 0.5}, 0.1);
  CHECK(letters_at(shear(), {ball}, {0.52, 0.45}) == std::vector<std::size_t>{0});
  CHECK(letters_at(shear(), {ball}, {0.0, 0.0}) == std::vector<std::size_t>{1});
}

TEST_CASE("coding growth of the shear with two balls") {
  CodingParams params;
  params.n_schedule = {8, 16, 32, 64, 128};
  params.pool_size = 20000;
  const std::vector<Region> balls{Region::ball({0.25, 0.25}, 0.1), Region::ball({0.7, 0.6}, 0.1)};
  const auto res = coding_growth(shear(), balls, params);
  CHECK(res.fit.slope >= 0.8);
  for (std::size_t i = 1; i < res.records.size(); ++i) CHECK(res.records[i].words >= res.records[i - 1].words);
}

TEST_CASE("recurrence profiles") {
  const auto pool = zoo::sample_points(rotation2(), 300, 8);
  const auto id = recurrence_profile(identity2(), 0.1, 10, pool);
  CHECK(id.max_first_return == 1);
  CHECK(id.fraction_nonreturning == 0.0);

  const auto scan = recurrence_scan(rotation2(), 0.1, {2000, 4000, 8000}, pool);
  CHECK(scan.stable);
  CHECK(scan.profiles.back().fraction_nonreturning == 0.0);
  CHECK_FALSE(scan.profiles.back().wandering_certificate());

  const auto ns_pool = zoo::sample_points(north_south(), 300, 9);
  const auto ns = recurrence_profile(north_south(), 0.05, 2000, ns_pool);
  CHECK(ns.fraction_nonreturning > 0.0);
  CHECK(ns.wandering_certificate());
  CHECK_THROWS(recurrence_profile(identity2(), 0.1, 0, pool));
}

TEST_CASE("sphere model") {
  for (double w : {0.01, 0.3, 0.5, 0.9}) {
    CHECK(logit(sphere_height_map(2.0, w)) == doctest::Approx(logit(w) + std::log(4.0)));
    CHECK(logistic(logit(w)) == doctest::Approx(w));
    CHECK(sphere_height_map(2.0, w) > w);
    // Chord to the south pole is sqrt(w) on the sphere of diameter 1.
    CHECK(sphere_chord(logit(w), 0.3, -INFINITY, 0.0) == doctest::Approx(std::sqrt(w)));
  }
  CHECK(sphere_chord(-INFINITY, 0.0, INFINITY, 0.0) == doctest::Approx(1.0));
  CHECK(sphere_chord(0.0, 0.0, 0.0, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("north-south cover") {
  NorthSouthParams p;
  p.eps = 0.1;
  p.n = 250;
  const NorthSouthCover c(p);
  const auto v = c.verify(2000, 1);
  CHECK(v.verified);
  CHECK(v.max_distance <= p.eps);
  CHECK(static_cast<double>(c.size()) <= c.linear_constant() * static_cast<double>(p.n));
  CHECK(c.transit_counts(500, 1).within_bound());

  // eps = 0.2 makes the perturbed-rotation branch reachable within the window.
  p.eps = 0.2;
  p.n = 2000;
  const NorthSouthCover big(p);
  REQUIRE(big.perturbed_threshold() < p.n);
  const auto vb = big.verify(2000, 2);
  CHECK(vb.verified);
  CHECK(static_cast<double>(big.size()) <= big.linear_constant() * static_cast<double>(p.n));

  p.eps = 0.3;
  CHECK_THROWS(NorthSouthCover{p});
}
