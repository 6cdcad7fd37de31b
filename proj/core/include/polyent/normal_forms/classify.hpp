#pragma once

// Classification of projective linear maps of P^1 and P^2 by polynomial
// entropy. Decisions that hinge on an equality (moduli, C = 4, C real) use a
// relative tolerance tol: gaps <= tol count as equal, gaps >= 3 tol as
// different, and anything in between yields an Ambiguous verdict listing
// every candidate class.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polyent::normal_forms {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-8;

enum class Pgl2Kind { Identity, Elliptic, Parabolic, Loxodromic };

struct Pgl2Class {
  Pgl2Kind kind = Pgl2Kind::Identity;   // best guess when ambiguous
  Complex c_invariant;
  int predicted_hpol = 0;
  bool ambiguous = false;
  std::vector<Pgl2Kind> candidates;     // single entry unless ambiguous
};

enum class Pgl3Case { Isometry, SaddleDiagonal, SaddleJordan, MixedDiagonal, ParabolicRotation, FullJordan };

struct Pgl3Class {
  Pgl3Case kind = Pgl3Case::Isometry;
  int predicted_hpol = 0;
  std::array<Complex, 3> eigenvalues{};     // sorted by decreasing modulus
  std::array<double, 2> modulus_ratios{};   // m1/m2 and m2/m3
  std::vector<std::size_t> jordan_blocks;   // sizes, descending
  double tolerance_used = kDefaultTolerance;
  bool ambiguous = false;
  std::vector<Pgl3Case> candidates;
};

std::string to_string(Pgl2Kind k);
std::string to_string(Pgl3Case c);
int predicted_hpol(Pgl2Kind k);
int predicted_hpol(Pgl3Case c);

// tr(H)^2 / det(H); invariant under conjugation and scaling.
Complex moebius_invariant(const Eigen::MatrixXcd& h);

Pgl2Class classify_pgl2(const Eigen::MatrixXcd& h, double tol = kDefaultTolerance);
Pgl3Class classify_pgl3(const Eigen::MatrixXcd& h, double tol = kDefaultTolerance);

// P H P^{-1} for a random P with condition number in [1, max_condition].
Eigen::MatrixXcd random_conjugate(const Eigen::MatrixXcd& h, std::uint64_t seed, double max_condition = 20.0);
// Random P as above (exposed for tests).
Eigen::MatrixXcd random_well_conditioned(std::size_t n, std::uint64_t seed, double max_condition = 20.0);

// Representative of each case, in the normal forms listed by the classification.
Eigen::MatrixXcd representative(Pgl3Case c);

}  // namespace polyent::normal_forms
