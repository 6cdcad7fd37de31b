#include <cmath>
#include <numbers>

#include "doctest.h"
#include "polyent/common/random.hpp"
#include "polyent/zoo/system.hpp"

using namespace polyent;
using namespace polyent::zoo;
using cohomology::IntMatrix;

namespace {

DynSystem shear() { return TorusAffineMap(IntMatrix{{1, 1}, {0, 1}}); }
DynSystem rotation2() { return TorusAffineMap(IntMatrix::identity(2), {std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0}); }

DynSystem p1_diag(Complex a, Complex b) {
  Eigen::MatrixXcd h(2, 2);
  h << a, 0, 0, b;
  return ProjectiveMap(1, h);
}

Eigen::MatrixXcd random_unitary(std::size_t n, Rng& rng) {
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ();
}

Eigen::MatrixXcd random_matrix(std::size_t n, Rng& rng) {
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
  return g + 3.0 * Eigen::MatrixXcd::Identity(g.rows(), g.cols());
}

std::vector<DynSystem> zoo_corpus() {
  Rng rng(5);
  Eigen::MatrixXcd j3(3, 3);
  j3 << 1, 1, 0, 0, 1, 1, 0, 0, 1;
  return {shear(),
          rotation2(),
          TorusAffineMap(IntMatrix::jordan_block(3), {0.1, 0.2, 0.3}),
          TorusAffineMap(IntMatrix{{2, 1}, {1, 1}}),
          p1_diag(2.0, 1.0),
          ProjectiveMap(1, random_matrix(2, rng)),
          ProjectiveMap(2, j3),
          ProjectiveMap(2, random_matrix(3, rng)),
          SkewProduct(0.3819660112501051, {{1, Complex(0.3, 0.1)}, {3, Complex(0.05, 0)}})};
}

}  // namespace

TEST_CASE("evaluate examples") {
  const Point t = evaluate(shear(), {0.25, 0.5});
  CHECK(t[0] == doctest::Approx(0.75));
  CHECK(t[1] == doctest::Approx(0.5));

  const Point p = evaluate(p1_diag(2.0, 1.0), {1.0, 0.0, 1.0, 0.0});
  CHECK(p[0] == doctest::Approx(2.0 / std::sqrt(5.0)));
  CHECK(p[1] == doctest::Approx(0.0));
  CHECK(p[2] == doctest::Approx(1.0 / std::sqrt(5.0)));

  const DynSystem skew = SkewProduct(0.25, {{1, Complex(0.5, 0.0)}});
  const Point s = evaluate(skew, {0.0, 0.0});
  CHECK(s[0] == doctest::Approx(0.25));
  CHECK(std::min(s[1], 1.0 - s[1]) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("iterate examples") {
  for (const auto& sys : zoo_corpus()) {
    const Point p = sample_points(sys, 1, 3).front();
    const Point q = iterate(sys, p, 0);
    CHECK(distance(sys, p, q) < 1e-14);
  }
  const Point t = iterate(shear(), {0.0, 0.1}, 4);
  CHECK(t[0] == doctest::Approx(0.4));
  CHECK(t[1] == doctest::Approx(0.1));
  const Point p = iterate(p1_diag(2.0, 1.0), {1.0, 0.0, 1.0, 0.0}, 10);
  const double n = std::hypot(1024.0, 1.0);
  CHECK(p[0] == doctest::Approx(1024.0 / n));
  CHECK(p[2] == doctest::Approx(1.0 / n));
}

TEST_CASE("distance examples") {
  CHECK(distance(shear(), {0.0, 0.0}, {0.9, 0.0}) == doctest::Approx(0.1));
  const DynSystem p1 = p1_diag(2.0, 1.0);
  CHECK(distance(p1, {1, 0, 0, 0}, {0, 0, 1, 0}) == doctest::Approx(1.0));
  CHECK(distance(p1, {1, 0, 1, 0}, {1, 0, -1, 0}) == doctest::Approx(1.0));
}

TEST_CASE("sampling is deterministic and grids have the right size") {
  for (const auto& sys : zoo_corpus()) {
    CHECK(sample_points(sys, 50, 17) == sample_points(sys, 50, 17));
    CHECK(sample_points(sys, 50, 17) != sample_points(sys, 50, 18));
  }
  CHECK(grid_points(shear(), 7).size() == 49);
  CHECK(grid_points(TorusAffineMap(IntMatrix::jordan_block(3)), 5).size() == 125);
}

TEST_CASE("Fubini-Study uniform samples on P^1") {
  // |<p,q>|^2 is uniform on [0,1] for independent uniform points, so the mean
  // chordal distance is int sqrt(1-t) dt = 2/3 and the mean angle arccos|<p,q>| is pi/4.
  const DynSystem p1 = p1_diag(2.0, 1.0);
  const auto pts = sample_points(p1, 200000, 99);
  double chord = 0, angle = 0;
  for (std::size_t i = 0; i < 100000; ++i) {
    const double d = distance(p1, pts[2 * i], pts[2 * i + 1]);
    chord += d;
    angle += std::asin(d);
  }
  CHECK(chord / 1e5 == doctest::Approx(2.0 / 3.0).epsilon(0.02));
  CHECK(angle / 1e5 == doctest::Approx(std::numbers::pi / 4).epsilon(0.02));
}

TEST_CASE("box and logbox samplers") {
  SamplerSpec box{SamplerKind::Box, {0.5, 0.5}, {0.01, 0.2}, {}};
  for (const auto& p : sample_points(shear(), box, 1000, 1)) {
    CHECK(std::abs(p[0] - 0.5) <= 0.01);
    CHECK(std::abs(p[1] - 0.5) <= 0.2);
  }
  SamplerSpec logbox{SamplerKind::LogBox, {}, {}, {{0, 0}, {-30, -30}}};
  for (const auto& p : sample_points(p1_diag(2.0, 1.0), logbox, 100, 1)) {
    CHECK(std::hypot(p[2], p[3]) == doctest::Approx(1e-30).epsilon(1e-9));
  }
  CHECK_THROWS_AS(sample_points(shear(), logbox, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_points(p1_diag(2.0, 1.0), box, 10, 1), std::invalid_argument);
}

TEST_CASE("affine and quasi-random samplers") {
  SamplerSpec line;
  line.kind = SamplerKind::Affine;
  line.origin = {1.0, 0.0};
  line.axes = {{{0.0, 1.0}, -2.0, 3.0, true}};
  const auto sys = p1_diag(2.0, 1.0);
  for (const auto& p : sample_points(sys, line, 500, 4)) {
    // Canonical form has p0 real positive, so the ratio is p1 / p0.
    const double ratio = std::hypot(p[2], p[3]) / p[0];
    CHECK(std::log10(ratio) >= -2.0 - 1e-9);
    CHECK(std::log10(ratio) <= 3.0 + 1e-9);
    CHECK(std::abs(p[3]) < 1e-12);
  }
  line.quasi_random = true;
  const auto a = sample_points(sys, line, 256, 4);
  CHECK(a == sample_points(sys, line, 256, 4));
  CHECK(a != sample_points(sys, line, 256, 5));
  // A shifted Sobol stream in one dimension hits every interval of width 1/256 once.
  std::vector<int> hits(256, 0);
  for (const auto& p : a) {
    const double u = (std::log10(std::hypot(p[2], p[3]) / p[0]) + 2.0) / 5.0;
    ++hits[std::min<std::size_t>(255, static_cast<std::size_t>(u * 256))];
  }
  CHECK(std::count(hits.begin(), hits.end(), 0) <= 2);

  SamplerSpec bad = line;
  bad.origin = {1.0};
  CHECK_THROWS_AS(sample_points(sys, bad, 10, 1), std::invalid_argument);
  bad = line;
  bad.axes[0].lo = 5.0;
  CHECK_THROWS_AS(sample_points(sys, bad, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_points(shear(), line, 10, 1), std::invalid_argument);
  CHECK(sampler_kind_from_string("affine") == SamplerKind::Affine);

  SamplerSpec qbox{SamplerKind::Box, {0.5, 0.5}, {0.1, 0.1}, {}};
  qbox.quasi_random = true;
  for (const auto& p : sample_points(shear(), qbox, 200, 2)) CHECK(std::abs(p[0] - 0.5) <= 0.1);
}

TEST_CASE("derivative norms") {
  const auto seq = max_derivative_norm(rotation2(), 20, {});
  for (double v : seq) CHECK(v == doctest::Approx(1.0));
  const auto sh = max_derivative_norm(shear(), 50, {});
  for (std::size_t n = 1; n <= 50; ++n) CHECK(sh[n - 1] == doctest::Approx(static_cast<double>(n + 1)));

  // Single real mode: D_n(x) = 2 Re(2 pi i a e^{2 pi i x} (z^n - 1)/(z - 1)),
  // so max_x |D_n| = 4 pi |a| |sin(pi n alpha) / sin(pi alpha)|.
  const double alpha = 0.1234567, a = 0.2;
  const DynSystem skew = SkewProduct(alpha, {{1, Complex(a, 0)}});
  const auto grid = grid_points(skew, 400);
  const auto ds = max_derivative_norm(skew, 30, grid);
  for (std::size_t n = 1; n <= 30; ++n) {
    const double expect =
        1.0 + 4 * std::numbers::pi * a * std::abs(std::sin(std::numbers::pi * n * alpha) / std::sin(std::numbers::pi * alpha));
    CHECK(ds[n - 1] == doctest::Approx(expect).epsilon(1e-3));
  }
}

TEST_CASE("closed-form and finite-difference derivative norms agree") {
  for (const auto& sys : zoo_corpus()) {
    for (const auto& p : sample_points(sys, 20, 4)) {
      CHECK(derivative_norm_fd(sys, p) == doctest::Approx(derivative_norm(sys, p)).epsilon(1e-4));
    }
  }
}

TEST_CASE("property: metric axioms") {
  for (const auto& sys : zoo_corpus()) {
    const auto pts = sample_points(sys, 30000, 11);
    for (std::size_t i = 0; i < 10000; ++i) {
      const Point &a = pts[3 * i], &b = pts[3 * i + 1], &c = pts[3 * i + 2];
      const double ab = distance(sys, a, b), ba = distance(sys, b, a);
      REQUIRE(std::abs(ab - ba) <= 1e-10);
      REQUIRE(ab <= distance(sys, a, c) + distance(sys, c, b) + 1e-10);
      REQUIRE(distance(sys, a, a) <= 1e-10);
    }
  }
}

TEST_CASE("property: evaluate and its inverse") {
  for (const auto& sys : zoo_corpus()) {
    for (const auto& p : sample_points(sys, 500, 12)) {
      CHECK(distance(sys, evaluate_inverse(sys, evaluate(sys, p)), p) <= 1e-10);
      CHECK(distance(sys, evaluate(sys, evaluate_inverse(sys, p)), p) <= 1e-10);
      CHECK(distance(sys, iterate(sys, iterate(sys, p, 7), -7), p) <= 1e-9);
    }
  }
}

TEST_CASE("property: projective scale invariance") {
  Rng rng(8);
  for (std::size_t dim : {1u, 2u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::MatrixXcd h = random_matrix(dim + 1, rng);
      const Complex c(standard_normal(rng) * 5, standard_normal(rng) * 5);
      const DynSystem f = ProjectiveMap(dim, h), g = ProjectiveMap(dim, c * h);
      for (const auto& p : sample_points(f, 50, static_cast<std::uint64_t>(trial))) {
        const Point fp = evaluate(f, p), gp = evaluate(g, p);
        for (std::size_t i = 0; i < fp.size(); ++i) CHECK(std::abs(fp[i] - gp[i]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: isometries preserve distances") {
  Rng rng(21);
  std::vector<DynSystem> isos = {rotation2(),
                                 TorusAffineMap(IntMatrix{{0, 1}, {1, 0}}, {0.3, 0.7}),
                                 TorusAffineMap(IntMatrix{{0, -1}, {1, 0}}, {0.1, 0.0}),
                                 ProjectiveMap(1, random_unitary(2, rng)),
                                 ProjectiveMap(2, random_unitary(3, rng))};
  for (const auto& sys : isos) {
    const auto pts = sample_points(sys, 40, 2);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      const double d0 = distance(sys, pts[i], pts[i + 1]);
      auto a = orbit(sys, pts[i], 1001), b = orbit(sys, pts[i + 1], 1001);
      for (std::size_t n = 0; n <= 1000; ++n) REQUIRE(std::abs(distance(sys, a[n], b[n]) - d0) <= 1e-10);
    }
  }
}

TEST_CASE("property: exact torus path matches stepping") {
  std::vector<DynSystem> maps = {shear(), rotation2(), TorusAffineMap(IntMatrix::jordan_block(3), {0.1, 0.2, 0.3})};
  for (const auto& sys : maps) {
    for (const auto& p : sample_points(sys, 5, 6)) {
      Point q = p;
      const auto& tm = std::get<TorusAffineMap>(sys);
      for (std::int64_t n = 1; n <= 1000; ++n) {
        tm.step(q.data());
        if (n % 97 == 0 || n == 1000) REQUIRE(distance(sys, q, iterate(sys, p, n)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("compensated torus orbit drift stays below 1e-9 over 1e6 steps") {
  const DynSystem rot = rotation2();
  const Point p{0.123, 0.456};
  const auto& tm = std::get<TorusAffineMap>(rot);
  Point hi = p, lo(2, 0.0);
  for (int j = 0; j < 1000000; ++j) tm.step_compensated(hi.data(), lo.data());
  CHECK(distance(rot, hi, iterate(rot, p, 1000000)) <= 1e-9);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(TorusAffineMap(IntMatrix{{2, 0}, {0, 1}}), std::invalid_argument);
  Eigen::MatrixXcd sing(2, 2);
  sing << 1, 2, 2, 4;
  CHECK_THROWS_AS(ProjectiveMap(1, sing), std::invalid_argument);
  CHECK_THROWS_AS(SkewProduct(0.3, std::vector<SkewProduct::Mode>{{0, Complex(1, 0)}}), std::invalid_argument);
}
