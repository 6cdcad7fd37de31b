#include "polyent/cohomology/int_matrix.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace polyent::cohomology {

IntMatrix::IntMatrix(std::size_t n) : n_(n), a_(n * n) {}

IntMatrix::IntMatrix(std::size_t n, std::vector<BigInt> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) {
    throw std::invalid_argument("IntMatrix: expected " + std::to_string(n * n) + " entries, got " +
                                std::to_string(a_.size()));
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw std::invalid_argument("IntMatrix: matrix must be square");
    for (long long v : row) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::jordan_block(std::size_t n) {
  IntMatrix m = identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
  return m;
}

IntMatrix IntMatrix::block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dim();
  IntMatrix m(n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) m(off + i, off + j) = b(i, j);
    off += b.dim();
  }
  return m;
}

IntMatrix IntMatrix::companion(const std::vector<BigInt>& monic_coeffs) {
  if (monic_coeffs.size() < 2 || monic_coeffs.back() != 1) {
    throw std::invalid_argument("companion: polynomial must be monic of degree >= 1");
  }
  const std::size_t n = monic_coeffs.size() - 1;
  IntMatrix m(n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -monic_coeffs[i];
  return m;
}

void IntMatrix::require_same_dim(const IntMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("IntMatrix: dimension mismatch");
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  require_same_dim(o);
  IntMatrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  require_same_dim(o);
  IntMatrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  require_same_dim(o);
  IntMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const BigInt& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

IntMatrix IntMatrix::pow(std::uint64_t e) const {
  IntMatrix result = identity(n_);
  IntMatrix base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

BigInt IntMatrix::trace() const {
  BigInt t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

BigInt IntMatrix::determinant() const {
  if (n_ == 0) return 1;
  // Bareiss: every intermediate division is exact.
  std::vector<BigInt> m = a_;
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * n_ + j]; };
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n_ && at(p, k) == 0) ++p;
      if (p == n_) return 0;
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      for (std::size_t j = k + 1; j < n_; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n_ - 1, n_ - 1);
}

std::size_t IntMatrix::rank() const {
  std::vector<BigInt> m = a_;
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * n_ + j]; };
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_ && rank < n_; ++col) {
    std::size_t p = rank;
    while (p < n_ && at(p, col) == 0) ++p;
    if (p == n_) continue;
    if (p != rank)
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(rank, j), at(p, j));
    for (std::size_t i = rank + 1; i < n_; ++i) {
      for (std::size_t j = col + 1; j < n_; ++j) {
        at(i, j) = (at(i, j) * at(rank, col) - at(i, col) * at(rank, j)) / prev;
      }
      at(i, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return rank;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigInt& v) { return v == 0; });
}

bool IntMatrix::is_identity() const { return *this == identity(n_); }

BigInt IntMatrix::max_abs() const {
  BigInt best = 0;
  for (const auto& v : a_) best = std::max<BigInt>(best, abs(v));
  return best;
}

double IntMatrix::entry_as_double(std::size_t i, std::size_t j) const {
  return (*this)(i, j).convert_to<double>();
}

IntMatrix IntMatrix::unimodular_inverse() const {
  const BigInt det = determinant();
  if (det != 1 && det != -1) {
    throw std::domain_error("unimodular_inverse: determinant is " + det.str() + ", not +-1");
  }
  // Gauss-Jordan over Q on [M | I]; the result is integral because det = +-1.
  std::vector<Rational> aug(n_ * 2 * n_);
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return aug[i * 2 * n_ + j]; };
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) at(i, j) = Rational((*this)(i, j));
    at(i, n_ + i) = 1;
  }
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t p = c;
    while (at(p, c) == 0) ++p;
    if (p != c)
      for (std::size_t j = 0; j < 2 * n_; ++j) std::swap(at(c, j), at(p, j));
    const Rational piv = at(c, c);
    for (std::size_t j = 0; j < 2 * n_; ++j) at(c, j) /= piv;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == c || at(i, c) == 0) continue;
      const Rational f = at(i, c);
      for (std::size_t j = 0; j < 2 * n_; ++j) at(i, j) -= f * at(c, j);
    }
  }
  IntMatrix inv(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) inv(i, j) = numerator(at(i, n_ + j));
  return inv;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

}  // namespace polyent::cohomology
