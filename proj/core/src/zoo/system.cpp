#include "polyent/zoo/system.hpp"

#include <numbers>
#include <optional>

#include <boost/random/sobol.hpp>
#include <stdexcept>

#include "polyent/common/numeric.hpp"
#include "polyent/common/random.hpp"

namespace polyent::zoo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_dim(const DynSystem& s, const Point& p) {
  if (p.size() != state_dim(s)) {
    throw std::invalid_argument("point has " + std::to_string(p.size()) + " coordinates, system expects " +
                                std::to_string(state_dim(s)));
  }
}

// Signed wrapped difference in [-1/2, 1/2).
double wrapped_diff(double a, double b) {
  double d = a - b;
  d -= std::floor(d + 0.5);
  return d;
}

Point uniform_projective(std::size_t coords, Rng& rng) {
  Point p(2 * coords);
  for (double& v : p) v = standard_normal(rng);
  ProjectiveMap::normalize(p.data(), coords);
  return p;
}

double jacobian_inf_norm(const std::vector<std::vector<double>>& rows) {
  double best = 0.0;
  for (const auto& r : rows) {
    double sum = 0.0;
    for (double v : r) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace

std::string family_name(const DynSystem& s) {
  return std::visit(overloaded{[](const TorusAffineMap&) { return std::string("torus"); },
                               [](const ProjectiveMap& m) { return "projective-P" + std::to_string(m.dim()); },
                               [](const SkewProduct&) { return std::string("skew"); }},
                    s);
}

std::size_t state_dim(const DynSystem& s) {
  return std::visit([](const auto& m) { return m.state_dim(); }, s);
}

Point canonical(const DynSystem& s, Point p) {
  check_dim(s, p);
  if (const auto* pm = std::get_if<ProjectiveMap>(&s)) {
    ProjectiveMap::normalize(p.data(), pm->coords());
  } else {
    for (double& v : p) v = frac(v);
  }
  return p;
}

Point evaluate(const DynSystem& s, const Point& p) {
  Point q = canonical(s, p);
  std::visit([&](const auto& m) { m.step(q.data()); }, s);
  return q;
}

Point evaluate_inverse(const DynSystem& s, const Point& p) {
  Point q = canonical(s, p);
  std::visit([&](const auto& m) { m.step_inverse(q.data()); }, s);
  return q;
}

Point iterate(const DynSystem& s, const Point& p, std::int64_t n) {
  Point q = canonical(s, p);
  return std::visit(overloaded{[&](const TorusAffineMap& m) { return m.iterate_exact(q, n); },
                               [&](const SkewProduct& m) {
                                 m.iterate(q.data(), n);
                                 return q;
                               },
                               [&](const ProjectiveMap& m) {
                                 const std::uint64_t steps = static_cast<std::uint64_t>(n < 0 ? -n : n);
                                 for (std::uint64_t i = 0; i < steps; ++i) {
                                   if (n > 0) m.step(q.data());
                                   else m.step_inverse(q.data());
                                 }
                                 return q;
                               }},
                    s);
}

std::vector<Point> orbit(const DynSystem& s, const Point& p, std::size_t n) {
  std::vector<Point> out;
  out.reserve(n);
  Point q = canonical(s, p);
  if (const auto* tm = std::get_if<TorusAffineMap>(&s)) {
    Point lo(q.size(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      out.push_back(q);
      tm->step_compensated(q.data(), lo.data());
    }
    return out;
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.push_back(q);
    std::visit([&](const auto& m) { m.step(q.data()); }, s);
  }
  return out;
}

double distance(const DynSystem& s, const Point& p, const Point& q) {
  check_dim(s, p);
  check_dim(s, q);
  return std::visit([&](const auto& m) { return m.distance(p.data(), q.data()); }, s);
}

std::vector<Point> sample_points(const DynSystem& s, std::size_t count, std::uint64_t seed) {
  return sample_points(s, SamplerSpec{}, count, seed);
}

std::vector<Point> grid_points(const DynSystem& s, std::size_t resolution) {
  if (resolution == 0) throw std::invalid_argument("grid_points: resolution must be positive");
  const double r = static_cast<double>(resolution);
  std::vector<Point> out;
  if (const auto* pm = std::get_if<ProjectiveMap>(&s)) {
    constexpr double tp = 2.0 * std::numbers::pi;
    if (pm->dim() == 1) {
      // Heights w and angles theta on the sphere: z = (sqrt(1-w), sqrt(w) e^{i theta}).
      for (std::size_t i = 0; i < resolution; ++i)
        for (std::size_t j = 0; j < resolution; ++j) {
          const double w = (static_cast<double>(i) + 0.5) / r, th = tp * static_cast<double>(j) / r;
          Point p{std::sqrt(1 - w), 0.0, std::sqrt(w) * std::cos(th), std::sqrt(w) * std::sin(th)};
          ProjectiveMap::normalize(p.data(), 2);
          out.push_back(std::move(p));
        }
      return out;
    }
    for (std::size_t i = 0; i < resolution; ++i)
      for (std::size_t j = 0; j < resolution; ++j)
        for (std::size_t k = 0; k < resolution; ++k)
          for (std::size_t l = 0; l < resolution; ++l) {
            const double a = (static_cast<double>(i) + 0.5) / r, b = (static_cast<double>(j) + 0.5) / r;
            const double t1 = tp * static_cast<double>(k) / r, t2 = tp * static_cast<double>(l) / r;
            const double m0 = std::sqrt(a), m1 = std::sqrt((1 - a) * b), m2 = std::sqrt((1 - a) * (1 - b));
            Point p{m0, 0.0, m1 * std::cos(t1), m1 * std::sin(t1), m2 * std::cos(t2), m2 * std::sin(t2)};
            ProjectiveMap::normalize(p.data(), 3);
            out.push_back(std::move(p));
          }
    return out;
  }
  const std::size_t d = state_dim(s);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= resolution;
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point p(d);
    std::size_t rem = idx;
    for (std::size_t i = d; i-- > 0;) {
      p[i] = static_cast<double>(rem % resolution) / r;
      rem /= resolution;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::Uniform: return "uniform";
    case SamplerKind::Box: return "box";
    case SamplerKind::LogBox: return "logbox";
    case SamplerKind::Affine: return "affine";
  }
  return "?";
}

SamplerKind sampler_kind_from_string(const std::string& name) {
  if (name == "uniform") return SamplerKind::Uniform;
  if (name == "box") return SamplerKind::Box;
  if (name == "logbox") return SamplerKind::LogBox;
  if (name == "affine") return SamplerKind::Affine;
  throw std::invalid_argument("unknown sampler '" + name + "' (expected uniform, box, logbox or affine)");
}

void SamplerSpec::validate(const DynSystem& s) const {
  const bool projective = std::holds_alternative<ProjectiveMap>(s);
  switch (kind) {
    case SamplerKind::Uniform: return;
    case SamplerKind::Box: {
      if (projective) throw std::invalid_argument("box sampler applies to torus and skew systems only");
      const std::size_t d = state_dim(s);
      if (half_widths.size() != d) throw std::invalid_argument("box sampler: need one half-width per coordinate");
      if (!center.empty() && center.size() != d) throw std::invalid_argument("box sampler: center has wrong length");
      for (double h : half_widths)
        if (!(h > 0.0 && h <= 0.5)) throw std::invalid_argument("box sampler: half-widths must lie in (0, 0.5]");
      return;
    }
    case SamplerKind::LogBox: {
      if (!projective) throw std::invalid_argument("logbox sampler applies to projective systems only");
      const std::size_t c = std::get<ProjectiveMap>(s).coords();
      if (log10_ranges.size() != c) throw std::invalid_argument("logbox sampler: need one log10 range per coordinate");
      for (const auto& [lo, hi] : log10_ranges)
        if (!(lo <= hi) || lo < -250 || hi > 250) throw std::invalid_argument("logbox sampler: ranges must satisfy -250 <= lo <= hi <= 250");
      return;
    }
    case SamplerKind::Affine: {
      if (!projective) throw std::invalid_argument("affine sampler applies to projective systems only");
      const std::size_t c = std::get<ProjectiveMap>(s).coords();
      if (origin.size() != c) throw std::invalid_argument("affine sampler: origin needs one entry per coordinate");
      if (axes.empty()) throw std::invalid_argument("affine sampler: need at least one axis");
      for (const auto& ax : axes) {
        if (ax.direction.size() != c) throw std::invalid_argument("affine sampler: axis direction has wrong length");
        if (!(ax.lo <= ax.hi) || !std::isfinite(ax.lo) || !std::isfinite(ax.hi))
          throw std::invalid_argument("affine sampler: axis range must satisfy lo <= hi");
        if (ax.log10 && (ax.lo < -250 || ax.hi > 250))
          throw std::invalid_argument("affine sampler: log axis ranges must lie in [-250, 250]");
      }
      return;
    }
  }
}

namespace {

// Unit-interval draws for the samplers: iid from the seeded stream, or a
// Sobol sequence with a seeded Cranley-Patterson shift. The Sobol stream
// expects exactly `dims` draws per point.
class UnitStream {
 public:
  UnitStream(Rng& rng, bool quasi, std::size_t dims) : rng_(rng) {
    if (!quasi) return;
    sobol_.emplace(static_cast<unsigned>(dims));
    shift_.resize(dims);
    for (double& v : shift_) v = uniform01(rng);
  }
  double next() {
    if (!sobol_) return uniform01(rng_);
    const double v = std::ldexp(static_cast<double>((*sobol_)() >> 11), -53);
    const double out = frac(v + shift_[axis_]);
    axis_ = (axis_ + 1) % shift_.size();
    return out;
  }

 private:
  Rng& rng_;
  std::optional<boost::random::sobol> sobol_;
  std::vector<double> shift_;
  std::size_t axis_ = 0;
};

}  // namespace

std::vector<Point> sample_points(const DynSystem& s, const SamplerSpec& spec, std::size_t count,
                                 std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("sample_points: count must be positive");
  spec.validate(s);
  Rng rng = make_rng(seed, {0x5a3d1eULL});
  std::vector<Point> out;
  out.reserve(count);
  const std::size_t d = state_dim(s);
  if (const auto* pm = std::get_if<ProjectiveMap>(&s)) {
    constexpr double tp = 2.0 * std::numbers::pi;
    const bool affine = spec.kind == SamplerKind::Affine;
    const std::size_t dims = affine ? spec.axes.size() : 2 * pm->coords();
    UnitStream unit(rng, spec.quasi_random && spec.kind != SamplerKind::Uniform, dims);
    for (std::size_t i = 0; i < count; ++i) {
      if (spec.kind == SamplerKind::Uniform) {
        out.push_back(uniform_projective(pm->coords(), rng));
        continue;
      }
      Point p(d);
      if (affine) {
        std::vector<Complex> z(spec.origin);
        for (const auto& ax : spec.axes) {
          const double u = ax.lo + (ax.hi - ax.lo) * unit.next();
          const double t = ax.log10 ? std::pow(10.0, u) : u;
          for (std::size_t c = 0; c < z.size(); ++c) z[c] += t * ax.direction[c];
        }
        for (std::size_t c = 0; c < z.size(); ++c) {
          p[2 * c] = z[c].real();
          p[2 * c + 1] = z[c].imag();
        }
      } else {
        for (std::size_t c = 0; c < pm->coords(); ++c) {
          const auto [lo, hi] = spec.log10_ranges[c];
          const double u = lo + (hi - lo) * unit.next();
          const double phase = tp * unit.next();
          const double m = std::pow(10.0, u);
          p[2 * c] = m * std::cos(phase);
          p[2 * c + 1] = m * std::sin(phase);
        }
      }
      ProjectiveMap::normalize(p.data(), pm->coords());
      out.push_back(std::move(p));
    }
    return out;
  }
  Point center = spec.center;
  if (spec.kind == SamplerKind::Box && center.empty()) {
    center.resize(d);
    for (double& c : center) c = uniform01(rng);
  }
  UnitStream unit(rng, spec.quasi_random && spec.kind == SamplerKind::Box, d);
  for (std::size_t i = 0; i < count; ++i) {
    Point p(d);
    for (std::size_t c = 0; c < d; ++c) {
      const double u = unit.next();
      p[c] = spec.kind == SamplerKind::Box ? frac(center[c] + spec.half_widths[c] * (2.0 * u - 1.0)) : u;
    }
    out.push_back(std::move(p));
  }
  return out;
}

double derivative_norm(const DynSystem& s, const Point& p) {
  check_dim(s, p);
  return std::visit(overloaded{[&](const TorusAffineMap& m) { return m.power_norm(1); },
                               [&](const SkewProduct& m) { return m.power_derivative_norm(frac(p[0]), 1); },
                               [&](const ProjectiveMap& m) {
                                 Point q = canonical(s, p);
                                 return m.derivative_norm(q.data());
                               }},
                    s);
}

double derivative_norm_fd(const DynSystem& s, const Point& p, double h) {
  const Point base = canonical(s, p);
  if (const auto* pm = std::get_if<ProjectiveMap>(&s)) {
    const std::size_t c = pm->coords();
    Eigen::VectorXcd z(static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < c; ++i) z(static_cast<Eigen::Index>(i)) = Complex(base[2 * i], base[2 * i + 1]);
    const Point fz = evaluate(s, base);
    Eigen::VectorXcd fzv(static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < c; ++i) fzv(static_cast<Eigen::Index>(i)) = Complex(fz[2 * i], fz[2 * i + 1]);
    // Real basis of the horizontal space at z.
    std::vector<Eigen::VectorXcd> basis;
    for (std::size_t e = 0; e < c; ++e) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Unit(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(e));
      v -= z * z.dot(v);
      for (const auto& b : basis) v -= b * b.dot(v);
      if (v.norm() < 1e-8) continue;
      v.normalize();
      basis.push_back(v);
      if (basis.size() == c - 1) break;
    }
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(2 * c), static_cast<Eigen::Index>(2 * (c - 1)));
    auto image = [&](const Eigen::VectorXcd& w) {
      Point q(2 * c);
      for (std::size_t i = 0; i < c; ++i) {
        q[2 * i] = w(static_cast<Eigen::Index>(i)).real();
        q[2 * i + 1] = w(static_cast<Eigen::Index>(i)).imag();
      }
      const Point fq = evaluate(s, q);
      Eigen::VectorXcd out(static_cast<Eigen::Index>(c));
      for (std::size_t i = 0; i < c; ++i) out(static_cast<Eigen::Index>(i)) = Complex(fq[2 * i], fq[2 * i + 1]);
      // Align the phase with f(z) before differencing.
      const Complex ip = fzv.dot(out);
      return Eigen::VectorXcd(out * (std::abs(ip) > 0 ? std::conj(ip) / std::abs(ip) : Complex(1)));
    };
    Eigen::Index col = 0;
    for (const auto& b : basis) {
      for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
        Eigen::VectorXcd plus = z + h * dir * b, minus = z - h * dir * b;
        Eigen::VectorXcd dv = (image(plus) - image(minus)) / (2 * h);
        dv -= fzv * fzv.dot(dv);
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(c); ++i) {
          jac(2 * i, col) = dv(i).real();
          jac(2 * i + 1, col) = dv(i).imag();
        }
        ++col;
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    return svd.singularValues()(0);
  }
  const std::size_t d = base.size();
  const Point fb = evaluate(s, base);
  std::vector<std::vector<double>> rows(d, std::vector<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    Point plus = base, minus = base;
    plus[j] += h;
    minus[j] -= h;
    const Point fp = evaluate(s, plus), fm = evaluate(s, minus);
    for (std::size_t i = 0; i < d; ++i) rows[i][j] = wrapped_diff(fp[i], fm[i]) / (2 * h);
  }
  return jacobian_inf_norm(rows);
}

std::vector<double> max_derivative_norm(const DynSystem& s, std::size_t n_max, const std::vector<Point>& samples) {
  std::vector<double> out(n_max, 0.0);
  if (const auto* tm = std::get_if<TorusAffineMap>(&s)) {
    cohomology::IntMatrix power = cohomology::IntMatrix::identity(tm->dim());
    for (std::size_t n = 1; n <= n_max; ++n) {
      power = power * tm->matrix();
      double best = 0.0;
      for (std::size_t i = 0; i < power.dim(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < power.dim(); ++j) row += std::abs(power.entry_as_double(i, j));
        best = std::max(best, row);
      }
      out[n - 1] = best;
    }
    return out;
  }
  for (const auto& p : samples) {
    const Point q = canonical(s, p);
    if (const auto* sm = std::get_if<SkewProduct>(&s)) {
      for (std::size_t n = 1; n <= n_max; ++n) out[n - 1] = std::max(out[n - 1], sm->power_derivative_norm(q[0], n));
    } else {
      const auto seq = std::get<ProjectiveMap>(s).derivative_norm_sequence(q.data(), n_max);
      for (std::size_t n = 0; n < n_max; ++n) out[n] = std::max(out[n], seq[n]);
    }
  }
  return out;
}

}  // namespace polyent::zoo
