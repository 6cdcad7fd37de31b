#include "polyent/normal_forms/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "polyent/common/random.hpp"

namespace polyent::normal_forms {

namespace {

enum class Cmp { Equal, Different, Unsure };

Cmp compare_gap(double gap, double tol) {
  if (gap <= tol) return Cmp::Equal;
  if (gap >= 3.0 * tol) return Cmp::Different;
  return Cmp::Unsure;
}

// Resolutions of a tri-state comparison: both outcomes when unsure.
std::vector<bool> outcomes(Cmp c) {
  if (c == Cmp::Equal) return {true};
  if (c == Cmp::Different) return {false};
  return {true, false};
}

double spectral_norm(const Eigen::MatrixXcd& h) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(h).singularValues()(0);
}

void require_square_invertible(const Eigen::MatrixXcd& h, Eigen::Index n, const char* who) {
  if (h.rows() != n || h.cols() != n) {
    throw std::invalid_argument(std::string(who) + ": expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                " matrix");
  }
  const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(h).singularValues();
  if (!(sv(n - 1) > 1e-14 * sv(0))) throw std::invalid_argument(std::string(who) + ": singular matrix");
}

Eigen::MatrixXcd random_unitary(std::size_t n, Rng& rng) {
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ();
}

}  // namespace

std::string to_string(Pgl2Kind k) {
  switch (k) {
    case Pgl2Kind::Identity: return "Identity";
    case Pgl2Kind::Elliptic: return "Elliptic";
    case Pgl2Kind::Parabolic: return "Parabolic";
    case Pgl2Kind::Loxodromic: return "Loxodromic";
  }
  return "?";
}

std::string to_string(Pgl3Case c) {
  switch (c) {
    case Pgl3Case::Isometry: return "Isometry";
    case Pgl3Case::SaddleDiagonal: return "SaddleDiagonal";
    case Pgl3Case::SaddleJordan: return "SaddleJordan";
    case Pgl3Case::MixedDiagonal: return "MixedDiagonal";
    case Pgl3Case::ParabolicRotation: return "ParabolicRotation";
    case Pgl3Case::FullJordan: return "FullJordan";
  }
  return "?";
}

int predicted_hpol(Pgl2Kind k) { return (k == Pgl2Kind::Identity || k == Pgl2Kind::Elliptic) ? 0 : 1; }

int predicted_hpol(Pgl3Case c) {
  switch (c) {
    case Pgl3Case::Isometry: return 0;
    case Pgl3Case::SaddleDiagonal:
    case Pgl3Case::SaddleJordan: return 2;
    default: return 1;
  }
}

Complex moebius_invariant(const Eigen::MatrixXcd& h) {
  require_square_invertible(h, 2, "moebius_invariant");
  const Complex tr = h.trace();
  return tr * tr / h.determinant();
}

Pgl2Class classify_pgl2(const Eigen::MatrixXcd& h, double tol) {
  Pgl2Class out;
  out.c_invariant = moebius_invariant(h);
  const Complex c = out.c_invariant;
  const double scale = h.norm();
  const Eigen::MatrixXcd traceless = h - (h.trace() / 2.0) * Eigen::MatrixXcd::Identity(2, 2);
  const bool scalar = traceless.norm() <= tol * scale;

  // C = z + 2 + 1/z for the eigenvalue ratio z: the ratio lies on the unit
  // circle iff C is real in [0, 4], and z = 1 iff C = 4.
  const Cmp four = compare_gap(std::abs(c - 4.0), tol);
  const Cmp real = compare_gap(std::abs(c.imag()), tol);
  const Cmp nonneg = c.real() >= 0 ? Cmp::Equal : compare_gap(-c.real(), tol);
  auto decide = [&](bool is_four, bool is_real, bool is_nonneg) {
    if (is_four) return scalar ? Pgl2Kind::Identity : Pgl2Kind::Parabolic;
    if (is_real && is_nonneg && c.real() < 4.0) return Pgl2Kind::Elliptic;
    return Pgl2Kind::Loxodromic;
  };
  std::set<Pgl2Kind> kinds;
  for (bool a : outcomes(four))
    for (bool b : outcomes(real))
      for (bool d : outcomes(nonneg)) kinds.insert(decide(a, b, d));
  out.candidates.assign(kinds.begin(), kinds.end());
  out.ambiguous = out.candidates.size() > 1;
  out.kind = decide(std::abs(c - 4.0) < 2 * tol, std::abs(c.imag()) < 2 * tol, c.real() > -2 * tol);
  out.predicted_hpol = predicted_hpol(out.kind);
  return out;
}

Pgl3Class classify_pgl3(const Eigen::MatrixXcd& h, double tol) {
  require_square_invertible(h, 3, "classify_pgl3");
  if (!(tol > 0)) throw std::invalid_argument("classify_pgl3: tolerance must be positive");
  Pgl3Class out;
  out.tolerance_used = tol;
  const double norm = spectral_norm(h);
  const double rank_threshold = tol * norm;
  // Eigenvalues of a perturbed Jordan block spread like delta^{1/k}; clusters
  // closer than this are tested for a shared eigenvalue.
  const double cluster_radius = 1e-3 * norm;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h, false);
  std::array<Complex, 3> lam{es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
  auto singular_values = [&](Complex mu) {
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(h - mu * Eigen::MatrixXcd::Identity(3, 3)).singularValues();
  };
  auto is_eigenvalue = [&](Complex mu) { return singular_values(mu)(2) <= rank_threshold; };

  struct Cluster {
    Complex mean;
    std::size_t mult;
    std::size_t geometric;
  };
  std::vector<Cluster> clusters;
  std::array<int, 3> owner{0, 1, 2};
  auto spread = [&](std::initializer_list<int> ids) {
    double r = 0;
    for (int a : ids)
      for (int b : ids) r = std::max(r, std::abs(lam[a] - lam[b]));
    return r;
  };
  const Complex all_mean = (lam[0] + lam[1] + lam[2]) / 3.0;
  if (spread({0, 1, 2}) <= 2 * cluster_radius && is_eigenvalue(all_mean)) {
    owner = {0, 0, 0};
  } else {
    double best = 2 * cluster_radius;
    std::array<int, 2> pair{-1, -1};
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const double d = std::abs(lam[a] - lam[b]);
        if (d <= best && is_eigenvalue((lam[a] + lam[b]) / 2.0)) {
          best = d;
          pair = {a, b};
        }
      }
    if (pair[0] >= 0) {
      owner = {0, 0, 0};
      owner[3 - pair[0] - pair[1]] = 1;
    }
  }
  const int n_clusters = *std::max_element(owner.begin(), owner.end()) + 1;
  for (int k = 0; k < n_clusters; ++k) {
    Cluster cl{0.0, 0, 0};
    for (int i = 0; i < 3; ++i)
      if (owner[i] == k) {
        cl.mean += lam[i];
        ++cl.mult;
      }
    cl.mean /= static_cast<double>(cl.mult);
    const auto sv = singular_values(cl.mean);
    for (Eigen::Index i = 0; i < 3; ++i)
      if (sv(i) <= rank_threshold) ++cl.geometric;
    cl.geometric = std::clamp<std::size_t>(cl.geometric, 1, cl.mult);
    clusters.push_back(cl);
  }

  // Jordan blocks of each cluster from algebraic and geometric multiplicity.
  std::vector<std::size_t> blocks;
  std::vector<bool> defective_pair(static_cast<std::size_t>(n_clusters), false);
  for (int k = 0; k < n_clusters; ++k) {
    const auto& cl = clusters[static_cast<std::size_t>(k)];
    if (cl.geometric == cl.mult) {
      blocks.insert(blocks.end(), cl.mult, 1);
    } else if (cl.mult == 2) {
      blocks.push_back(2);
      defective_pair[static_cast<std::size_t>(k)] = true;
    } else if (cl.geometric == 1) {
      blocks.push_back(3);
    } else {
      blocks.push_back(2);
      blocks.push_back(1);
    }
  }
  std::sort(blocks.rbegin(), blocks.rend());
  out.jordan_blocks = blocks;

  // Slots sorted by decreasing modulus, each remembering its cluster.
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(clusters[owner[a]].mean) > std::abs(clusters[owner[b]].mean);
  });
  std::array<double, 3> mod{};
  for (int i = 0; i < 3; ++i) {
    out.eigenvalues[i] = lam[order[i]];
    mod[i] = std::abs(clusters[owner[order[i]]].mean);
  }
  out.modulus_ratios = {mod[0] / mod[1], mod[1] / mod[2]};
  const double gap12 = (mod[0] - mod[1]) / mod[0];
  const double gap23 = (mod[1] - mod[2]) / mod[1];
  const bool has3 = std::find(blocks.begin(), blocks.end(), 3) != blocks.end();
  const bool has2 = std::find(blocks.begin(), blocks.end(), 2) != blocks.end();

  auto decide = [&](bool eq12, bool eq23) {
    if (!eq12 && !eq23) return Pgl3Case::SaddleDiagonal;
    if (eq12 && eq23) {
      if (has3) return Pgl3Case::FullJordan;
      if (has2) return Pgl3Case::ParabolicRotation;
      return Pgl3Case::Isometry;
    }
    const int a = eq12 ? 0 : 1;
    const int ca = owner[order[a]], cb = owner[order[a + 1]];
    const bool jordan_pair = ca == cb && defective_pair[static_cast<std::size_t>(ca)];
    return jordan_pair ? Pgl3Case::SaddleJordan : Pgl3Case::MixedDiagonal;
  };
  std::set<Pgl3Case> cases;
  for (bool a : outcomes(compare_gap(gap12, tol)))
    for (bool b : outcomes(compare_gap(gap23, tol))) cases.insert(decide(a, b));
  out.candidates.assign(cases.begin(), cases.end());
  out.ambiguous = out.candidates.size() > 1;
  out.kind = decide(gap12 < 2 * tol, gap23 < 2 * tol);
  out.predicted_hpol = predicted_hpol(out.kind);
  return out;
}

Eigen::MatrixXcd random_well_conditioned(std::size_t n, std::uint64_t seed, double max_condition) {
  if (!(max_condition >= 1.0)) throw std::invalid_argument("random_conjugate: max_condition must be >= 1");
  Rng rng = make_rng(seed, {0x9c1});
  const Eigen::MatrixXcd u = random_unitary(n, rng), v = random_unitary(n, rng);
  Eigen::VectorXd s(static_cast<Eigen::Index>(n));
  const double log_cond = std::log(max_condition);
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::exp(log_cond * uniform01(rng));
  // Pin the extremes so the condition number is exactly max(s)/min(s) <= max_condition.
  s(0) = 1.0;
  return u * s.cast<Complex>().asDiagonal() * v;
}

Eigen::MatrixXcd random_conjugate(const Eigen::MatrixXcd& h, std::uint64_t seed, double max_condition) {
  if (h.rows() != h.cols()) throw std::invalid_argument("random_conjugate: matrix must be square");
  const Eigen::MatrixXcd p = random_well_conditioned(static_cast<std::size_t>(h.rows()), seed, max_condition);
  return p * h * p.inverse();
}

Eigen::MatrixXcd representative(Pgl3Case c) {
  const Complex rot_a = std::polar(1.0, 2 * std::numbers::pi * std::numbers::sqrt2);
  const Complex rot_b = std::polar(1.0, 2 * std::numbers::pi * std::sqrt(3.0));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  switch (c) {
    case Pgl3Case::Isometry: m.diagonal() << 1.0, rot_a, rot_b; break;
    case Pgl3Case::SaddleDiagonal: m.diagonal() << 2.0, 0.5, 1.0; break;
    case Pgl3Case::SaddleJordan:
      m.diagonal() << 1.0, 1.0, 2.0;
      m(0, 1) = 1.0;
      break;
    case Pgl3Case::MixedDiagonal: m.diagonal() << 1.0, rot_a, 2.0; break;
    case Pgl3Case::ParabolicRotation:
      m.diagonal() << rot_b, rot_b, 1.0;
      m(0, 1) = 1.0;
      break;
    case Pgl3Case::FullJordan:
      m.diagonal() << 1.0, 1.0, 1.0;
      m(0, 1) = 1.0;
      m(1, 2) = 1.0;
      break;
  }
  return m;
}

}  // namespace polyent::normal_forms
