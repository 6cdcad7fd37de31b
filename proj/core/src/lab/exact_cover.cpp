#include "polyent/lab/exact_cover.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

#include "polyent/cohomology/growth.hpp"

namespace polyent::lab {

namespace {

BigInt binomial(std::uint64_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational decimal_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("decimal_rational: cannot parse '" + text + "'"); };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = decimal_rational(text.substr(0, slash));
    const Rational den = decimal_rational(text.substr(slash + 1));
    if (den == 0) throw bad();
    return num / den;
  }
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  BigInt mantissa = 0;
  long scale = 0;
  bool digits = false, dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      digits = true;
      if (dot) --scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw bad();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw bad();
    long e = 0;
    const char* first = text.data() + i + 1;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), e);
    if (ec != std::errc() || ptr != text.data() + text.size() || e > 100000 || e < -100000) throw bad();
    scale += e;
  }
  Rational r(mantissa);
  if (scale >= 0) r *= Rational(pow10(static_cast<unsigned>(scale)));
  else r /= Rational(pow10(static_cast<unsigned>(-scale)));
  return neg ? Rational(-r) : r;
}

Rational decimal_rational(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::invalid_argument("decimal_rational: non-finite value");
  return decimal_rational(std::string(buf, ptr));
}

BigInt cover_count_for_blocks(const std::vector<std::size_t>& blocks, std::uint64_t n, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("cover count: eps must be positive");
  BigInt total = 1;
  for (std::size_t b : blocks)
    for (std::size_t j = 1; j <= b; ++j) {
      const Rational q = Rational(binomial(n, j - 1)) / eps;
      total *= BigInt(numerator(q) / denominator(q)) + 1;
    }
  return total;
}

BigInt exact_unipotent_cover_count(const cohomology::IntMatrix& a, std::uint64_t n, const Rational& eps) {
  if (!cohomology::is_unipotent(a)) throw std::domain_error("exact_unipotent_cover_count: matrix is not unipotent");
  return cover_count_for_blocks(cohomology::jordan_block_sizes(a, 1), n, eps);
}

cohomology::RatPoly cover_count_envelope(const std::vector<std::size_t>& blocks, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("cover count: eps must be positive");
  auto total = cohomology::RatPoly::constant(Rational(1));
  for (std::size_t b : blocks)
    for (std::size_t j = 1; j <= b; ++j) {
      const auto factor =
          cohomology::binomial_poly(j - 1).scaled(Rational(1) / eps) + cohomology::RatPoly::constant(Rational(1));
      total = total * factor;
    }
  return total;
}

std::size_t real_torus_hpol(const std::vector<std::size_t>& blocks) {
  std::size_t s = 0;
  for (std::size_t b : blocks) s += b * (b - 1) / 2;
  return s;
}

std::size_t complex_torus_hpol(const std::vector<std::size_t>& complex_blocks) {
  std::size_t s = 0;
  for (std::size_t k : complex_blocks) s += k * (k - 1);
  return s;
}

std::vector<std::size_t> pair_real_blocks(std::vector<std::size_t> real_blocks) {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t b : real_blocks) ++counts[b];
  std::vector<std::size_t> out;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    if (it->second % 2) {
      throw std::invalid_argument("pair_real_blocks: block size " + std::to_string(it->first) +
                                  " occurs an odd number of times");
    }
    out.insert(out.end(), it->second / 2, it->first);
  }
  return out;
}

}  // namespace polyent::lab
