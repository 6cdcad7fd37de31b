#include "polyent/zoo/skew.hpp"

#include <numbers>
#include <stdexcept>

#include "polyent/common/numeric.hpp"

namespace polyent::zoo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(double alpha, const std::vector<FourierMode>& modes) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("SkewProduct: alpha must be finite");
  for (const auto& m : modes) {
    if (m.k == 0) throw std::invalid_argument("SkewProduct: mode k = 0 would give g nonzero mean");
    if (!(m.residue >= 0.0 && m.residue < 1.0)) throw std::invalid_argument("SkewProduct: residue outside [0,1)");
  }
}

}  // namespace

SkewProduct::SkewProduct(double alpha, std::vector<Mode> modes) : alpha_(frac(alpha)) {
  for (const auto& m : modes) modes_.push_back({m.k, m.a, frac_mul(static_cast<double>(m.k), alpha_)});
  validate(alpha_, modes_);
}

SkewProduct SkewProduct::with_residues(double alpha, std::vector<FourierMode> modes) {
  SkewProduct s;
  s.alpha_ = frac(alpha);
  s.modes_ = std::move(modes);
  validate(s.alpha_, s.modes_);
  return s;
}

double SkewProduct::g(double x) const {
  double s = 0.0;
  for (const auto& m : modes_) {
    const double th = kTwoPi * frac_mul(static_cast<double>(m.k), x);
    s += 2.0 * (m.a.real() * std::cos(th) - m.a.imag() * std::sin(th));
  }
  return s;
}

double SkewProduct::g_prime(double x) const {
  double s = 0.0;
  for (const auto& m : modes_) {
    const double th = kTwoPi * frac_mul(static_cast<double>(m.k), x);
    const double w = kTwoPi * static_cast<double>(m.k);
    // d/dx 2 Re(a e^{i th}) = 2 Re(i w a e^{i th})
    s += -2.0 * w * (m.a.real() * std::sin(th) + m.a.imag() * std::cos(th));
  }
  return s;
}

double SkewProduct::mode_sum(const FourierMode& m, double x, std::uint64_t n, bool derivative) const {
  using LC = std::complex<long double>;
  const long double tp = 2.0L * std::numbers::pi_v<long double>;
  const long double th0 = tp * static_cast<long double>(frac_mul(static_cast<double>(m.k), x));
  LC coef(m.a.real(), m.a.imag());
  if (derivative) coef *= LC(0.0L, tp * static_cast<long double>(m.k));
  const LC start = std::polar(1.0L, th0);
  LC geo;
  if (m.residue == 0.0) {
    geo = LC(static_cast<long double>(n), 0.0L);
  } else {
    // (z^n - 1)/(z - 1) with e^{i t} - 1 = 2i sin(t/2) e^{i t/2}, z = e^{2 pi i r}.
    const long double pi = std::numbers::pi_v<long double>;
    const long double r = m.residue;
    const long double nr = frac_mul(static_cast<double>(n), m.residue);
    geo = std::polar(std::sin(pi * nr) / std::sin(pi * r), pi * (nr - r));
  }
  const LC total = coef * start * geo;
  return static_cast<double>(2.0L * total.real());
}

double SkewProduct::birkhoff_closed(double x, std::uint64_t n, bool derivative) const {
  if (n == 0) return 0.0;
  double s = 0.0;
  for (const auto& m : modes_) s += mode_sum(m, x, n, derivative);
  return s;
}

double SkewProduct::birkhoff_direct(double x, std::uint64_t n, bool derivative) const {
  CompensatedSum acc;
  std::vector<double> base(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) base[i] = frac_mul(static_cast<double>(modes_[i].k), x);
  for (std::uint64_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      const auto& m = modes_[i];
      const double th = kTwoPi * frac(base[i] + frac_mul(static_cast<double>(j), m.residue));
      if (derivative) {
        const double w = kTwoPi * static_cast<double>(m.k);
        acc.add(-2.0 * w * (m.a.real() * std::sin(th) + m.a.imag() * std::cos(th)));
      } else {
        acc.add(2.0 * (m.a.real() * std::cos(th) - m.a.imag() * std::sin(th)));
      }
    }
  }
  return acc.value();
}

void SkewProduct::step(double* p) const {
  const double gx = g(p[0]);
  p[0] = frac(p[0] + alpha_);
  p[1] = frac(p[1] + gx);
}

void SkewProduct::step_inverse(double* p) const {
  p[0] = frac(p[0] - alpha_);
  p[1] = frac(p[1] - g(p[0]));
}

void SkewProduct::iterate(double* p, std::int64_t n) const {
  if (n >= 0) {
    const auto un = static_cast<std::uint64_t>(n);
    const double s = birkhoff_closed(p[0], un);
    p[1] = frac(frac(p[1]) + frac(s));
    p[0] = frac(p[0] + frac_mul(static_cast<double>(un), alpha_));
    return;
  }
  // f^{-n}(x, y) = (x - n alpha, y - S_n(x - n alpha)).
  const auto un = static_cast<std::uint64_t>(-n);
  p[0] = frac(p[0] - frac_mul(static_cast<double>(un), alpha_));
  const double s = birkhoff_closed(p[0], un);
  p[1] = frac(p[1] - frac(s));
}

}  // namespace polyent::zoo
