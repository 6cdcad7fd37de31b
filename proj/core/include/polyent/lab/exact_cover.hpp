#pragma once

// Exact cover counts for unipotent torus maps. In Jordan coordinates the
// n-th power of a size-b block has entries C(n, j), and the lattice of
// spacing eps / C(n, j-1) along coordinate j gives a Bowen cover whose size
// is an explicit integer; its growth degree is b(b-1)/2.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polyent/cohomology/int_matrix.hpp"
#include "polyent/cohomology/polynomial.hpp"

namespace polyent::lab {

// Exact value of a decimal literal such as "0.1", "5e-2" or "1/8".
Rational decimal_rational(const std::string& text);
// Exact value of the shortest decimal that round-trips to x, so 0.1 maps to 1/10.
Rational decimal_rational(double x);

// prod over blocks, prod_{j=1..b} (floor(C(n, j-1) / eps) + 1).
BigInt cover_count_for_blocks(const std::vector<std::size_t>& blocks, std::uint64_t n, const Rational& eps);

// Same count for a unipotent matrix, through its Jordan block sizes.
// Throws std::domain_error if A is not unipotent.
BigInt exact_unipotent_cover_count(const cohomology::IntMatrix& a, std::uint64_t n, const Rational& eps);

// The floor-free envelope prod (C(n, j-1)/eps + 1) as a polynomial in n.
cohomology::RatPoly cover_count_envelope(const std::vector<std::size_t>& blocks, const Rational& eps);

// sum b(b-1)/2 over real Jordan blocks.
std::size_t real_torus_hpol(const std::vector<std::size_t>& blocks);
// sum k(k-1) over complex Jordan blocks (each is two real blocks of size k).
std::size_t complex_torus_hpol(const std::vector<std::size_t>& complex_blocks);
// Pairs equal real blocks into complex ones; throws if a size occurs an odd number of times.
std::vector<std::size_t> pair_real_blocks(std::vector<std::size_t> real_blocks);

}  // namespace polyent::lab
