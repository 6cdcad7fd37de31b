#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "polyent/cohomology/growth.hpp"

using namespace polyent;
using namespace polyent::cohomology;

namespace {

IntPoly poly(std::initializer_list<long long> low_to_high) {
  std::vector<BigInt> c;
  for (long long v : low_to_high) c.emplace_back(v);
  return IntPoly(std::move(c));
}

// Product of elementary row operations: a random matrix in SL_n(Z).
IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 6) {
  IntMatrix p = IntMatrix::identity(n);
  if (n < 2) return p;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(n);
    e(i, j) = coef(rng);
    p = p * e;
  }
  return p;
}

IntMatrix random_unipotent(std::size_t n, std::mt19937_64& rng, std::vector<std::size_t>& blocks) {
  blocks.clear();
  std::size_t left = n;
  std::vector<IntMatrix> parts;
  while (left > 0) {
    std::uniform_int_distribution<std::size_t> sz(1, left);
    const std::size_t b = sz(rng);
    blocks.push_back(b);
    parts.push_back(IntMatrix::jordan_block(b));
    left -= b;
  }
  std::sort(blocks.rbegin(), blocks.rend());
  const IntMatrix d = IntMatrix::block_diagonal(parts);
  const IntMatrix p = random_unimodular(n, rng);
  return p * d * p.unimodular_inverse();
}

double inf_norm(const IntMatrix& m) {
  double best = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < m.dim(); ++j) row += std::abs(m.entry_as_double(i, j));
    best = std::max(best, row);
  }
  return best;
}

}  // namespace

TEST_CASE("characteristic polynomial examples") {
  CHECK(characteristic_polynomial(IntMatrix::identity(2)).poly() == poly({1, -2, 1}));
  CHECK(characteristic_polynomial(IntMatrix{{0, -1}, {1, 0}}).poly() == poly({1, 0, 1}));
  CHECK(characteristic_polynomial(IntMatrix{{2, 1}, {1, 1}}).poly() == poly({1, -3, 1}));
  CHECK(characteristic_polynomial(IntMatrix{{2, 1}, {1, 1}}).to_string() == "t^2 - 3t + 1");
}

TEST_CASE("characteristic polynomial matches companion input") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<BigInt> coeffs;
    const int deg = 1 + trial % 6;
    for (int i = 0; i < deg; ++i) coeffs.emplace_back(c(rng));
    coeffs.emplace_back(1);
    const IntMatrix m = IntMatrix::companion(coeffs);
    CHECK(characteristic_polynomial(m).poly() == IntPoly(coeffs));
    // Conjugation invariance.
    const IntMatrix p = random_unimodular(m.dim(), rng);
    CHECK(characteristic_polynomial(p * m * p.unimodular_inverse()).poly() == IntPoly(coeffs));
  }
}

TEST_CASE("CharPolynomial rejects non-monic input") {
  CHECK_THROWS_AS(CharPolynomial(poly({1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(unit_circle_test(poly({1, 0, 3})), std::invalid_argument);
}

TEST_CASE("unit circle test examples") {
  CHECK(unit_circle_test(poly({1, 1, 1})).verdict == UnitCircleVerdict::AllRootsOfUnity);
  CHECK(unit_circle_test(poly({1, -3, 1})).verdict == UnitCircleVerdict::HasModulusGreaterOne);
  const auto r = unit_circle_test(poly({-1, 0, 0, 0, 1}));
  CHECK(r.verdict == UnitCircleVerdict::AllRootsOfUnity);
  CHECK(r.order_lcm == 4);
}

TEST_CASE("unit circle test strips zero roots") {
  // t^2 (t^2 + 1)
  const auto r = unit_circle_test(poly({0, 0, 1, 0, 1}));
  CHECK(r.zero_root_multiplicity == 2);
  CHECK(r.all_roots_of_unity());
  // t (t - 2): the nonzero root is off the circle.
  CHECK_FALSE(unit_circle_test(poly({0, -2, 1})).all_roots_of_unity());
  CHECK_THROWS_AS(unipotency_order(IntMatrix{{0, 0}, {0, 1}}), std::domain_error);
}

TEST_CASE("Lehmer polynomial is not cyclotomic") {
  // Salem number ~1.17628; a notoriously thin margin above 1.
  CHECK_FALSE(unit_circle_test(poly({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1})).all_roots_of_unity());
}

TEST_CASE("unipotency order examples") {
  CHECK(unipotency_order(IntMatrix::identity(3)) == 1);
  CHECK(unipotency_order(IntMatrix{{0, -1}, {1, 0}}) == 4);
  CHECK(unipotency_order(IntMatrix{{1, 1}, {0, 1}}) == 1);
  CHECK(unipotency_order(IntMatrix{{0, -1}, {1, -1}}) == 3);
  CHECK(unipotency_order(IntMatrix{{-1, 1}, {0, -1}}) == 2);
  CHECK_THROWS_AS(unipotency_order(IntMatrix{{2, 1}, {1, 1}}), std::domain_error);
}

TEST_CASE("jordan block sizes examples") {
  CHECK(jordan_block_sizes(IntMatrix::identity(4), 1) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(jordan_block_sizes(IntMatrix::jordan_block(3), 1) == std::vector<std::size_t>{3});
  CHECK(jordan_block_sizes(IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, 1) ==
        std::vector<std::size_t>{2, 1});
  CHECK_THROWS_AS(jordan_block_sizes(IntMatrix{{0, -1}, {1, 0}}, 1), std::domain_error);
}

TEST_CASE("symbolic power growth examples") {
  CHECK(symbolic_power_growth(IntMatrix::identity(3)) == 0);
  for (std::size_t k = 1; k <= 6; ++k) CHECK(symbolic_power_growth(IntMatrix::jordan_block(k)) == k - 1);
  CHECK(symbolic_power_growth(IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}) == 1);
  CHECK_THROWS_AS(symbolic_power_growth(IntMatrix{{0, -1}, {1, 0}}), std::domain_error);
}

TEST_CASE("symbolic power agrees with exact powers") {
  const IntMatrix j = IntMatrix::jordan_block(4);
  const auto entries = symbolic_power(j);
  for (std::uint64_t n : {0u, 1u, 5u, 17u}) {
    const IntMatrix p = j.pow(n);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t c = 0; c < 4; ++c)
        CHECK(entries[i * 4 + c].evaluate(Rational(n)) == Rational(p(i, c)));
  }
}

TEST_CASE("growth profile examples") {
  CohomologyAction ids{2, {{0, IntMatrix::identity(1), 1}, {1, IntMatrix::identity(3), 3}, {2, IntMatrix::identity(1), 1}}};
  const GrowthProfile p0 = growth_profile(ids);
  CHECK(p0.entropy_zero);
  CHECK(p0.s == 0);
  REQUIRE(p0.per_degree.size() == 3);
  for (const auto& d : p0.per_degree) CHECK(d.s == 0);

  CohomologyAction parabolic{2, {{0, IntMatrix::identity(1), 1}, {1, IntMatrix::jordan_block(3), 3}, {2, IntMatrix::identity(1), 1}}};
  const GrowthProfile p1 = growth_profile(parabolic);
  CHECK(p1.s_j(1) == 2);
  CHECK(p1.s == 2);
  REQUIRE(p1.bounds);
  CHECK(p1.bounds->gromov_sum == 4);
  CHECK(p1.bounds->minimum() == 4);

  CohomologyAction lox{2, {{0, IntMatrix::identity(1), 1}, {1, IntMatrix{{2, 1}, {1, 1}}, 2}, {2, IntMatrix::identity(1), 1}}};
  const GrowthProfile p2 = growth_profile(lox);
  CHECK_FALSE(p2.entropy_zero);
  CHECK(p2.positive_entropy_degree == 1);
  CHECK(p2.per_degree.empty());
  CHECK_THROWS_AS(hpol_bounds(p2, 2, 2), std::domain_error);
}

TEST_CASE("cohomology action validation") {
  CohomologyAction bad_top{2, {{0, IntMatrix::identity(1), 1}, {1, IntMatrix::identity(2), 2}, {2, IntMatrix{{2}}, 1}}};
  CHECK_THROWS_AS(growth_profile(bad_top), std::invalid_argument);
  CohomologyAction bad_betti{2, {{0, IntMatrix::identity(1), 1}, {1, IntMatrix::identity(3), 2}, {2, IntMatrix::identity(1), 1}}};
  CHECK_THROWS_AS(growth_profile(bad_betti), std::invalid_argument);
  CohomologyAction missing{2, {{0, IntMatrix::identity(1), 1}, {1, IntMatrix::identity(3), 3}}};
  CHECK_THROWS_AS(growth_profile(missing), std::invalid_argument);
}

TEST_CASE("hpol bounds reproduce the threefold values") {
  // k = 3 with s_1 = s_2 = 4: blocks of size 5 in degrees 1 and 2.
  CohomologyAction a{3,
                     {{0, IntMatrix::identity(1), 1},
                      {1, IntMatrix::jordan_block(5), 5},
                      {2, IntMatrix::jordan_block(5), 5},
                      {3, IntMatrix::identity(1), 1}}};
  const GrowthProfile p = growth_profile(a);
  REQUIRE(p.bounds);
  CHECK(p.s == 8);
  CHECK(p.bounds->gromov_sum == 11);
  CHECK(p.bounds->gromov_s1 == 15);
  CHECK(p.bounds->gromov_b2 == 15);
  REQUIRE(p.bounds->small_dim);
  CHECK(*p.bounds->small_dim == 9);
  CHECK(p.bounds->minimum() == 9);

  const HpolBounds flat = hpol_bounds(growth_profile(IntMatrix::identity(1)), 2, 1);
  CHECK(flat.minimum() == 2);
  CHECK_FALSE(hpol_bounds(growth_profile(IntMatrix::identity(1)), 4, 1).small_dim);
}

TEST_CASE("surface class examples") {
  CHECK(surface_class(IntMatrix{{0, -1}, {1, 0}}) == SurfaceClass::Elliptic);
  CHECK(surface_class(IntMatrix::jordan_block(3)) == SurfaceClass::Parabolic);
  CHECK(surface_class(IntMatrix{{2, 1}, {1, 1}}) == SurfaceClass::Loxodromic);
  CHECK(surface_class(IntMatrix{{1, 1}, {0, 1}}) == SurfaceClass::LinearGrowthAnomaly);
  CHECK(surface_class(IntMatrix::jordan_block(4)) == SurfaceClass::HigherGrowthAnomaly);
  CHECK_THROWS_AS(surface_class(IntMatrix{{2, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("property: random unipotent conjugates") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    std::vector<std::size_t> blocks;
    const IntMatrix m = random_unipotent(n, rng, blocks);
    REQUIRE(is_unipotent(m));
    const auto sizes = jordan_block_sizes(m, 1);
    CHECK(sizes == blocks);
    CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == n);
    CHECK(symbolic_power_growth(m) == sizes.front() - 1);

    // Rank sequence strictly decreasing until it reaches zero.
    const IntMatrix nil = m - IntMatrix::identity(n);
    IntMatrix acc = IntMatrix::identity(n);
    std::size_t prev = n;
    for (std::size_t k = 1; k <= n && prev > 0; ++k) {
      acc = acc * nil;
      const std::size_t r = acc.rank();
      CHECK(r < prev);
      prev = r;
    }
    CHECK(prev == 0);

    // Float cross-check: log-log slope of the sup norm.
    std::vector<double> xs, ys;
    for (int e = 4; e <= 14; ++e) {
      xs.push_back(std::log(std::pow(2.0, e)));
      ys.push_back(std::log(inf_norm(m.pow(std::uint64_t{1} << e))));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    CHECK(std::abs(sxy / sxx - static_cast<double>(sizes.front() - 1)) <= 0.15);
  }
}

TEST_CASE("property: finite order times unipotent") {
  std::mt19937_64 rng(99);
  const std::vector<IntMatrix> finite = {IntMatrix{{0, -1}, {1, 0}}, IntMatrix{{0, -1}, {1, -1}},
                                         IntMatrix{{-1}}, IntMatrix{{1, -1}, {1, 0}}};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> blocks;
    const IntMatrix& f = finite[static_cast<std::size_t>(trial) % finite.size()];
    // Commuting product: finite-order block times a unipotent on the other summand.
    const IntMatrix u = random_unipotent(1 + trial % 3, rng, blocks);
    IntMatrix m = IntMatrix::block_diagonal({f, u});
    const IntMatrix p = random_unimodular(m.dim(), rng);
    m = p * m * p.unimodular_inverse();
    REQUIRE(unit_circle_test(characteristic_polynomial(m)).all_roots_of_unity());
    const std::uint64_t order = unipotency_order(m);
    CHECK(is_unipotent(m.pow(order)));
    for (std::uint64_t d = 1; d < order; ++d) CHECK_FALSE(is_unipotent(m.pow(d)));
  }
}

TEST_CASE("property: surface class is stable under powers") {
  const std::vector<IntMatrix> ms = {IntMatrix{{0, -1}, {1, 0}}, IntMatrix::jordan_block(3),
                                     IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 1}, {0, 1}},
                                     IntMatrix::block_diagonal({IntMatrix{{0, -1}, {1, -1}}, IntMatrix::jordan_block(3)})};
  for (const auto& m : ms)
    for (std::uint64_t p = 1; p <= 6; ++p) CHECK(surface_class(m.pow(p)) == surface_class(m));
}

TEST_CASE("property: gromov sum below s1 bound for concave profiles") {
  // Concave symmetric s_j with s_j <= j s_1 and k <= 4: k + sum s_j <= k (s_1 + 1).
  for (std::size_t k = 2; k <= 4; ++k) {
    for (std::size_t s1 = 0; s1 <= 3; ++s1) {
      std::vector<DegreeAction> deg;
      deg.push_back({0, IntMatrix::identity(1), 1});
      for (std::size_t j = 1; j < k; ++j) {
        const std::size_t sj = std::min(j, k - j) * s1;
        deg.push_back({j, IntMatrix::jordan_block(sj + 1), sj + 1});
      }
      deg.push_back({k, IntMatrix::identity(1), 1});
      const GrowthProfile p = growth_profile(CohomologyAction{k, deg});
      REQUIRE(p.bounds);
      CHECK(p.bounds->gromov_sum <= p.bounds->gromov_s1);
    }
  }
}
