#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyent/cohomology/int_matrix.hpp"

namespace polyent::cohomology {

// Dense univariate polynomial, coefficients ordered by degree (low to high).
// The zero polynomial has no coefficients.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  static Polynomial monomial(std::size_t deg, T v = T(1)) {
    std::vector<T> c(deg + 1, T(0));
    c[deg] = std::move(v);
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    return Polynomial(std::move(r));
  }
  Polynomial operator-(const Polynomial& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] -= o.c_[k];
    return Polynomial(std::move(r));
  }
  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(r));
  }
  Polynomial scaled(const T& s) const {
    std::vector<T> r = c_;
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
  }
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  // Long division. For integer coefficients the divisor must be monic.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("Polynomial::divmod: division by zero");
    std::vector<T> rem = c_;
    if (rem.size() < d.c_.size()) return {Polynomial(), *this};
    std::vector<T> quot(rem.size() - d.c_.size() + 1, T(0));
    const T& lead = d.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
      const T& top = rem[k + d.c_.size() - 1];
      if (top == T(0)) continue;
      T q = top / lead;
      if (q * lead != top) throw std::domain_error("Polynomial::divmod: inexact division");
      quot[k] = q;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= q * d.c_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  template <typename X>
  X evaluate(const X& x) const {
    X acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + X(c_[k]);
    return acc;
  }

  std::string to_string(const char* var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const T& v = c_[k];
      if (v == T(0)) continue;
      const bool neg = v < T(0);
      const T mag = neg ? T(-v) : v;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      if (k == 0 || mag != T(1)) os << mag;
      if (k > 0) os << var;
      if (k > 1) os << "^" << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPoly = Polynomial<BigInt>;
using RatPoly = Polynomial<Rational>;

// Binomial coefficient C(n, k) as a polynomial in n with rational coefficients.
RatPoly binomial_poly(std::size_t k);

// k-th cyclotomic polynomial and Euler's totient.
IntPoly cyclotomic(std::size_t d);
std::size_t euler_phi(std::size_t d);

}  // namespace polyent::cohomology
