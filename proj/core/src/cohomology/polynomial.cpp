#include "polyent/cohomology/polynomial.hpp"

#include <map>
#include <mutex>

namespace polyent::cohomology {

RatPoly binomial_poly(std::size_t k) {
  RatPoly p = RatPoly::constant(Rational(1));
  for (std::size_t i = 0; i < k; ++i) {
    p = p * RatPoly(std::vector<Rational>{Rational(-static_cast<long long>(i)), Rational(1)});
    p = p.scaled(Rational(1, static_cast<long long>(i + 1)));
  }
  return p;
}

std::size_t euler_phi(std::size_t d) {
  std::size_t result = d;
  std::size_t m = d;
  for (std::size_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

IntPoly cyclotomic(std::size_t d) {
  if (d == 0) throw std::invalid_argument("cyclotomic: order must be positive");
  static std::mutex mu;
  static std::map<std::size_t, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  // Phi_d = (t^d - 1) / prod_{e | d, e < d} Phi_e
  std::vector<BigInt> c(d + 1, BigInt(0));
  c[0] = -1;
  c[d] = 1;
  IntPoly p(std::move(c));
  for (std::size_t e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto [q, r] = p.divmod(cyclotomic(e));
    p = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, p);
  return p;
}

}  // namespace polyent::cohomology
