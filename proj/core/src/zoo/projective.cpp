#include "polyent/zoo/projective.hpp"

#include <stdexcept>

namespace polyent::zoo {

namespace {

std::vector<Complex> flatten(const Eigen::MatrixXcd& m) {
  std::vector<Complex> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
  return out;
}

Eigen::VectorXcd to_vector(const double* p, std::size_t c) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(c));
  for (std::size_t i = 0; i < c; ++i) v(static_cast<Eigen::Index>(i)) = Complex(p[2 * i], p[2 * i + 1]);
  return v;
}

// Orthonormal complex basis of the complement of unit vector z.
Eigen::MatrixXcd tangent_frame(const Eigen::VectorXcd& z) {
  const Eigen::Index c = z.size();
  Eigen::MatrixXcd frame(c, c - 1);
  Eigen::Index filled = 0;
  for (Eigen::Index e = 0; e < c && filled < c - 1; ++e) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(c, e);
    v -= z * z.dot(v);
    for (Eigen::Index k = 0; k < filled; ++k) v -= frame.col(k) * frame.col(k).dot(v);
    const double nv = v.norm();
    if (nv < 1e-8) continue;
    frame.col(filled++) = v / nv;
  }
  return frame;
}

// Real operator norm of a complex-linear-over-R map given by its images of
// the real basis {u_k, i u_k}.
double real_operator_norm(const Eigen::MatrixXcd& images) {
  const Eigen::Index rows = images.rows(), cols = images.cols();
  Eigen::MatrixXd real(2 * rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      real(2 * i, j) = images(i, j).real();
      real(2 * i + 1, j) = images(i, j).imag();
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(real);
  return svd.singularValues()(0);
}

}  // namespace

ProjectiveMap::ProjectiveMap(std::size_t dim, Eigen::MatrixXcd h) : dim_(dim), h_(std::move(h)) {
  if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("ProjectiveMap: dimension must be 1 or 2");
  const auto c = static_cast<Eigen::Index>(dim_ + 1);
  if (h_.rows() != c || h_.cols() != c) {
    throw std::invalid_argument("ProjectiveMap: matrix must be " + std::to_string(c) + "x" + std::to_string(c));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h_);
  const auto& sv = svd.singularValues();
  if (!(sv(c - 1) > 1e-14 * sv(0))) throw std::invalid_argument("ProjectiveMap: matrix is singular");
  hinv_ = h_.inverse();
  h_flat_ = flatten(h_);
  hinv_flat_ = flatten(hinv_);
}

void ProjectiveMap::normalize(double* p, std::size_t coords) {
  double n2 = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < 2 * coords; ++i) scale = std::max(scale, std::abs(p[i]));
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::domain_error("ProjectiveMap: degenerate point");
  for (std::size_t i = 0; i < 2 * coords; ++i) {
    p[i] /= scale;
    n2 += p[i] * p[i];
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (std::size_t i = 0; i < 2 * coords; ++i) p[i] *= inv;
  for (std::size_t i = 0; i < coords; ++i) {
    const double m = std::hypot(p[2 * i], p[2 * i + 1]);
    if (m <= kPhaseThreshold) continue;
    // Multiply by conj(p_i)/|p_i|.
    const double cr = p[2 * i] / m, ci = -p[2 * i + 1] / m;
    for (std::size_t j = 0; j < coords; ++j) {
      const double re = p[2 * j] * cr - p[2 * j + 1] * ci;
      const double im = p[2 * j] * ci + p[2 * j + 1] * cr;
      p[2 * j] = re;
      p[2 * j + 1] = im;
    }
    p[2 * i] = m;
    p[2 * i + 1] = 0.0;
    break;
  }
}

void ProjectiveMap::apply(const std::vector<Complex>& m, double* p) const {
  const std::size_t c = coords();
  double out[6];
  for (std::size_t i = 0; i < c; ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      const Complex a = m[i * c + j];
      re += a.real() * p[2 * j] - a.imag() * p[2 * j + 1];
      im += a.real() * p[2 * j + 1] + a.imag() * p[2 * j];
    }
    out[2 * i] = re;
    out[2 * i + 1] = im;
  }
  std::copy(out, out + 2 * c, p);
  normalize(p, c);
}

double ProjectiveMap::feature(const double* p, std::size_t i) const {
  auto re_prod = [&](std::size_t a, std::size_t b) { return p[2 * a] * p[2 * b] + p[2 * a + 1] * p[2 * b + 1]; };
  auto im_prod = [&](std::size_t a, std::size_t b) { return p[2 * a + 1] * p[2 * b] - p[2 * a] * p[2 * b + 1]; };
  if (dim_ == 1) {
    // Bloch vector of the projector.
    switch (i) {
      case 0: return re_prod(0, 0) - re_prod(1, 1);
      case 1: return 2.0 * re_prod(0, 1);
      default: return 2.0 * im_prod(0, 1);
    }
  }
  switch (i) {
    case 0: return re_prod(0, 0);
    case 1: return re_prod(1, 1);
    case 2: return re_prod(0, 1);
    case 3: return re_prod(0, 2);
    default: return re_prod(1, 2);
  }
}

double ProjectiveMap::derivative_norm(const double* p) const { return power_derivative_norm(p, 1); }

double ProjectiveMap::power_derivative_norm(const double* p, std::size_t n) const {
  if (n == 0) return 1.0;
  return derivative_norm_sequence(p, n).back();
}

std::vector<double> ProjectiveMap::derivative_norm_sequence(const double* p, std::size_t n_max) const {
  const std::size_t c = coords();
  Eigen::VectorXcd z = to_vector(p, c);
  z.normalize();
  const Eigen::MatrixXcd frame = tangent_frame(z);
  // Images of the real basis {u_k, i u_k} as horizontal vectors.
  Eigen::MatrixXcd v(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(2 * dim_));
  for (Eigen::Index k = 0; k < frame.cols(); ++k) {
    v.col(2 * k) = frame.col(k);
    v.col(2 * k + 1) = Complex(0, 1) * frame.col(k);
  }
  std::vector<double> out;
  out.reserve(n_max);
  double log_scale = 0.0;
  for (std::size_t step = 0; step < n_max; ++step) {
    const Eigen::VectorXcd hz = h_ * z;
    const double nz = hz.norm();
    const Eigen::VectorXcd q = hz / nz;
    Eigen::MatrixXcd hv = h_ * v / nz;
    hv -= q * (q.adjoint() * hv);
    z = q;
    const double m = hv.cwiseAbs().maxCoeff();
    if (m > 1e100 || (m < 1e-100 && m > 0)) {
      hv /= m;
      log_scale += std::log(m);
    }
    v = hv;
    out.push_back(real_operator_norm(v) * std::exp(log_scale));
  }
  return out;
}

}  // namespace polyent::zoo
