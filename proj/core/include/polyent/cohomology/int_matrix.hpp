#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyent {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace cohomology {

// Square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n);
  IntMatrix(std::size_t n, std::vector<BigInt> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix jordan_block(std::size_t n);
  static IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);
  // Companion matrix of a monic polynomial given low-to-high coefficients.
  static IntMatrix companion(const std::vector<BigInt>& monic_coeffs);

  std::size_t dim() const { return n_; }
  bool empty() const { return n_ == 0; }

  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

  IntMatrix pow(std::uint64_t e) const;
  IntMatrix transposed() const;
  BigInt trace() const;
  BigInt determinant() const;
  // Rank over the rationals (fraction-free elimination).
  std::size_t rank() const;
  bool is_zero() const;
  bool is_identity() const;
  // Largest absolute entry.
  BigInt max_abs() const;
  double entry_as_double(std::size_t i, std::size_t j) const;

  // Exact inverse for determinant +-1 matrices; throws otherwise.
  IntMatrix unimodular_inverse() const;

  std::string to_string() const;

 private:
  void require_same_dim(const IntMatrix& o) const;

  std::size_t n_ = 0;
  std::vector<BigInt> a_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace cohomology
}  // namespace polyent
