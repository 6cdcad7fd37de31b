#include "polyent/zoo/torus.hpp"

#include <stdexcept>

#include "polyent/common/numeric.hpp"

namespace polyent::zoo {

using cohomology::IntMatrix;

namespace {

std::vector<double> to_doubles(const IntMatrix& m) {
  std::vector<double> out(m.dim() * m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i * m.dim() + j] = m.entry_as_double(i, j);
  return out;
}

// x = mant * 2^exp with integral mant.
struct Dyadic {
  BigInt mant = 0;
  int exp = 0;
};

Dyadic to_dyadic(double x) {
  Dyadic d;
  if (x == 0.0) return d;
  int e = 0;
  const double f = std::frexp(x, &e);
  d.mant = BigInt(static_cast<long long>(std::ldexp(f, 53)));
  d.exp = e - 53;
  return d;
}

// frac(num / 2^shift) as a double.
double frac_of_scaled(BigInt num, int shift) {
  const BigInt den = BigInt(1) << shift;
  num %= den;
  if (num < 0) num += den;
  if (num == 0) return 0.0;
  double r;
  if (shift > 64) {
    const BigInt top = num >> (shift - 64);
    r = std::ldexp(top.convert_to<double>(), -64);
  } else {
    r = std::ldexp(num.convert_to<double>(), -shift);
  }
  return r >= 1.0 ? 0.0 : r;
}

// frac(M p + S b) exactly.
std::vector<double> exact_affine(const IntMatrix& m, const IntMatrix& s, const std::vector<double>& p,
                                 const std::vector<double>& b) {
  const std::size_t d = m.dim();
  std::vector<Dyadic> dp(d), db(d);
  int shift = 0;
  for (std::size_t i = 0; i < d; ++i) {
    dp[i] = to_dyadic(p[i]);
    db[i] = to_dyadic(b[i]);
    shift = std::max({shift, -dp[i].exp, -db[i].exp});
  }
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (dp[j].mant != 0) acc += m(i, j) * (dp[j].mant << (shift + dp[j].exp));
      if (db[j].mant != 0) acc += s(i, j) * (db[j].mant << (shift + db[j].exp));
    }
    out[i] = frac_of_scaled(acc, shift);
  }
  return out;
}

// [[A^n, sum_{j<n} A^j]] via the augmented block matrix [[A, I], [0, I]].
std::pair<IntMatrix, IntMatrix> power_and_sum(const IntMatrix& a, std::uint64_t n) {
  const std::size_t d = a.dim();
  IntMatrix aug(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug(i, j) = a(i, j);
    aug(i, d + i) = 1;
    aug(d + i, d + i) = 1;
  }
  const IntMatrix p = aug.pow(n);
  IntMatrix an(d), sn(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      an(i, j) = p(i, j);
      sn(i, j) = p(i, d + j);
    }
  return {an, sn};
}

}  // namespace

TorusAffineMap::TorusAffineMap(IntMatrix a) : TorusAffineMap(a, std::vector<double>(a.dim(), 0.0)) {}

TorusAffineMap::TorusAffineMap(IntMatrix a, std::vector<double> b)
    : d_(a.dim()), a_(std::move(a)), b_(std::move(b)) {
  if (d_ == 0 || d_ > kMaxDim) {
    throw std::invalid_argument("TorusAffineMap: dimension must be in 1.." + std::to_string(kMaxDim));
  }
  if (b_.size() != d_) throw std::invalid_argument("TorusAffineMap: translation has wrong length");
  for (double& v : b_) {
    if (!std::isfinite(v)) throw std::invalid_argument("TorusAffineMap: translation must be finite");
    v = frac(v);
  }
  const BigInt det = a_.determinant();
  if (det != 1 && det != -1) {
    throw std::invalid_argument("TorusAffineMap: |det A| must be 1, got det = " + det.str());
  }
  ainv_ = a_.unimodular_inverse();
  ad_ = to_doubles(a_);
  ainvd_ = to_doubles(ainv_);
  // f^{-1}(x) = A^{-1} x - A^{-1} b
  binv_ = exact_affine(IntMatrix(d_), IntMatrix(d_) - ainv_, std::vector<double>(d_, 0.0), b_);
}

void TorusAffineMap::step(double* p) const {
  double y[kMaxDim];
  for (std::size_t i = 0; i < d_; ++i) {
    double acc = b_[i];
    const double* row = &ad_[i * d_];
    for (std::size_t j = 0; j < d_; ++j) acc = std::fma(row[j], p[j], acc);
    y[i] = frac(acc);
  }
  std::copy(y, y + d_, p);
}

void TorusAffineMap::step_inverse(double* p) const {
  double y[kMaxDim];
  for (std::size_t i = 0; i < d_; ++i) {
    double acc = binv_[i];
    for (std::size_t j = 0; j < d_; ++j) acc = std::fma(ainvd_[i * d_ + j], p[j], acc);
    y[i] = frac(acc);
  }
  std::copy(y, y + d_, p);
}

void TorusAffineMap::step_compensated(double* hi, double* lo) const {
  std::vector<double> nh(d_), nl(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    CompensatedSum acc;
    acc.add(b_[i]);
    for (std::size_t j = 0; j < d_; ++j) {
      double pr, er;
      two_prod(ad_[i * d_ + j], hi[j], pr, er);
      acc.add(pr);
      acc.add(er);
      acc.add(ad_[i * d_ + j] * lo[j]);
    }
    // Reduce mod 1 on the leading part, then renormalize the pair.
    const double fl = std::floor(acc.sum);
    double s, e;
    two_sum(acc.sum - fl, acc.c, s, e);
    const double f2 = std::floor(s);
    s -= f2;
    nh[i] = s;
    nl[i] = e;
    if (nh[i] >= 1.0) nh[i] -= 1.0;
  }
  for (std::size_t i = 0; i < d_; ++i) {
    hi[i] = nh[i];
    lo[i] = nl[i];
  }
}

std::vector<double> TorusAffineMap::iterate_exact(const std::vector<double>& p, std::int64_t n) const {
  if (p.size() != d_) throw std::invalid_argument("TorusAffineMap: point has wrong dimension");
  if (n == 0) return p;
  if (n > 0) {
    auto [an, sn] = power_and_sum(a_, static_cast<std::uint64_t>(n));
    return exact_affine(an, sn, p, b_);
  }
  auto [an, sn] = power_and_sum(ainv_, static_cast<std::uint64_t>(-n));
  return exact_affine(an, sn, p, binv_);
}

double TorusAffineMap::power_norm(std::uint64_t n) const {
  const IntMatrix p = a_.pow(n);
  double best = 0.0;
  for (std::size_t i = 0; i < d_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < d_; ++j) row += std::abs(p.entry_as_double(i, j));
    best = std::max(best, row);
  }
  return best;
}

}  // namespace polyent::zoo
