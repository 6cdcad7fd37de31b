#pragma once

// Exact analysis of an integer-matrix action on cohomology: Kronecker
// root-of-unity test, unipotency order, Jordan block structure of the
// unipotent power, polynomial growth rates and the resulting upper bounds
// on polynomial entropy.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyent/cohomology/int_matrix.hpp"
#include "polyent/cohomology/polynomial.hpp"

namespace polyent::cohomology {

// Monic integer polynomial; degree equals the dimension of the matrix it came from.
class CharPolynomial {
 public:
  explicit CharPolynomial(IntPoly p);
  const IntPoly& poly() const { return p_; }
  std::size_t degree() const { return static_cast<std::size_t>(p_.degree()); }
  std::string to_string() const { return p_.to_string(); }
  bool operator==(const CharPolynomial& o) const { return p_ == o.p_; }

 private:
  IntPoly p_;
};

enum class UnitCircleVerdict { AllRootsOfUnity, HasModulusGreaterOne };

struct CyclotomicFactor {
  std::size_t order = 0;        // d in Phi_d
  std::size_t multiplicity = 0;
};

struct UnitCircleResult {
  UnitCircleVerdict verdict = UnitCircleVerdict::HasModulusGreaterOne;
  // Multiplicity of t as a factor; roots at zero are stripped before the test.
  std::size_t zero_root_multiplicity = 0;
  // Factorization of the cyclotomic part (complete when verdict is AllRootsOfUnity).
  std::vector<CyclotomicFactor> cyclotomic_factors;
  // lcm of the orders present in cyclotomic_factors.
  BigInt order_lcm = 1;

  bool all_roots_of_unity() const { return verdict == UnitCircleVerdict::AllRootsOfUnity; }
};

CharPolynomial characteristic_polynomial(const IntMatrix& m);

// Decides exactly whether every (nonzero) root is a root of unity by
// peeling off cyclotomic factors Phi_d with phi(d) <= degree.
UnitCircleResult unit_circle_test(const CharPolynomial& p);
UnitCircleResult unit_circle_test(const IntPoly& p);

// Smallest m >= 1 with M^m unipotent. Throws std::domain_error if M has an
// eigenvalue off the unit circle or a zero eigenvalue.
std::uint64_t unipotency_order(const IntMatrix& m);

// Block-size multiset (sorted descending) of M^m, computed from the rank
// sequence of (M^m - I)^k. Throws std::domain_error if M^m is not unipotent.
std::vector<std::size_t> jordan_block_sizes(const IntMatrix& m, std::uint64_t power);

// True iff (M - I)^dim == 0.
bool is_unipotent(const IntMatrix& m);

// Degree in n of the entrywise-largest polynomial entry of M^n, via
// M^n = sum_k C(n,k) N^k with N = M - I. Throws if M is not unipotent.
std::size_t symbolic_power_growth(const IntMatrix& m);

// Entries of M^n as polynomials in n (M unipotent).
std::vector<RatPoly> symbolic_power(const IntMatrix& m);

struct DegreeAction {
  std::size_t degree = 0;  // j, acting on H^{j,j}
  IntMatrix matrix;
  std::size_t betti = 1;   // b_{2j}
};

// Integer action of an automorphism on the even cohomology H^{j,j}, j = 0..k.
struct CohomologyAction {
  std::size_t k = 0;  // complex dimension
  std::vector<DegreeAction> degrees;

  // Checks the structural invariants; throws std::invalid_argument.
  void validate() const;
  std::size_t second_betti() const;
};

struct DegreeGrowth {
  std::size_t degree = 0;
  std::uint64_t unipotency_order = 1;
  std::vector<std::size_t> jordan_blocks;
  std::size_t s = 0;
};

struct HpolBounds {
  long gromov_sum = 0;              // k + s(f)
  long gromov_s1 = 0;               // k (s_1 + 1)
  long gromov_b2 = 0;               // k b_2
  std::optional<long> small_dim;    // k^2 when k <= 3
  long minimum() const;
};

struct GrowthProfile {
  bool entropy_zero = false;
  std::uint64_t unipotency_order = 1;
  std::vector<std::size_t> jordan_blocks;
  // For a single matrix: max block - 1. For an action: sum_{j=1}^{k-1} s_j.
  std::size_t s = 0;
  std::vector<DegreeGrowth> per_degree;
  std::optional<HpolBounds> bounds;
  // Degree whose action has an eigenvalue of modulus > 1, when entropy is positive.
  std::optional<std::size_t> positive_entropy_degree;

  std::size_t s_j(std::size_t j) const;
};

GrowthProfile growth_profile(const IntMatrix& m);
GrowthProfile growth_profile(const CohomologyAction& action);

// Gromov-type bounds plus the k^2 bound for k <= 3. Throws std::domain_error
// when the profile has positive entropy (all bounds are infinite).
HpolBounds hpol_bounds(const GrowthProfile& profile, std::size_t k, std::size_t b2);

enum class SurfaceClass { Elliptic, Parabolic, Loxodromic, LinearGrowthAnomaly, HigherGrowthAnomaly };

std::string to_string(SurfaceClass c);
std::string to_string(UnitCircleVerdict v);

// Trichotomy of the action on H^{1,1}. Throws if M is not invertible over Z.
SurfaceClass surface_class(const IntMatrix& m);

}  // namespace polyent::cohomology
