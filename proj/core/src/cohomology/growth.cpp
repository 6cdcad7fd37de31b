#include "polyent/cohomology/growth.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace polyent::cohomology {

CharPolynomial::CharPolynomial(IntPoly p) : p_(std::move(p)) {
  if (p_.is_zero() || p_.leading() != 1) {
    throw std::invalid_argument("CharPolynomial: polynomial must be monic, got " + p_.to_string());
  }
}

CharPolynomial characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier; the divisions by k are exact for integer matrices.
  const std::size_t n = m.dim();
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  IntMatrix mk(n);
  const IntMatrix id = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix shifted = mk;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
    mk = m * shifted;
    const BigInt tr = mk.trace();
    c[n - k] = -tr / static_cast<long long>(k);
  }
  return CharPolynomial(IntPoly(std::move(c)));
}

UnitCircleResult unit_circle_test(const CharPolynomial& p) { return unit_circle_test(p.poly()); }

UnitCircleResult unit_circle_test(const IntPoly& p) {
  if (p.is_zero() || p.leading() != 1) {
    throw std::invalid_argument("unit_circle_test: polynomial must be monic, got " + p.to_string());
  }
  UnitCircleResult result;
  std::vector<BigInt> coeffs = p.coeffs();
  std::size_t zeros = 0;
  while (zeros < coeffs.size() && coeffs[zeros] == 0) ++zeros;
  result.zero_root_multiplicity = zeros;
  IntPoly rest(std::vector<BigInt>(coeffs.begin() + static_cast<long>(zeros), coeffs.end()));

  const std::size_t deg = static_cast<std::size_t>(rest.degree());
  // phi(d) >= sqrt(d / 2), so every admissible order satisfies d <= 2 deg^2.
  const std::size_t max_order = 2 * deg * deg + 2;
  for (std::size_t d = 1; d <= max_order && rest.degree() > 0; ++d) {
    if (euler_phi(d) > static_cast<std::size_t>(rest.degree())) continue;
    const IntPoly phi = cyclotomic(d);
    std::size_t mult = 0;
    while (rest.degree() >= phi.degree()) {
      auto [q, r] = rest.divmod(phi);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    if (mult > 0) {
      result.cyclotomic_factors.push_back({d, mult});
      result.order_lcm = boost::multiprecision::lcm(result.order_lcm, BigInt(d));
    }
  }
  result.verdict = (rest.degree() == 0) ? UnitCircleVerdict::AllRootsOfUnity
                                        : UnitCircleVerdict::HasModulusGreaterOne;
  return result;
}

bool is_unipotent(const IntMatrix& m) {
  const IntMatrix nil = m - IntMatrix::identity(m.dim());
  return nil.pow(m.dim()).is_zero();
}

std::uint64_t unipotency_order(const IntMatrix& m) {
  const UnitCircleResult r = unit_circle_test(characteristic_polynomial(m));
  if (r.zero_root_multiplicity > 0) {
    throw std::domain_error("unipotency_order: zero eigenvalue, not an automorphism action");
  }
  if (!r.all_roots_of_unity()) {
    throw std::domain_error("unipotency_order: eigenvalue off the unit circle");
  }
  if (r.order_lcm > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("unipotency_order: order exceeds 64 bits");
  }
  const auto order = r.order_lcm.convert_to<std::uint64_t>();
  if (!is_unipotent(m.pow(order))) {
    throw std::logic_error("unipotency_order: M^m is not unipotent for m = lcm of root orders");
  }
  return order;
}

std::vector<std::size_t> jordan_block_sizes(const IntMatrix& m, std::uint64_t power) {
  const std::size_t n = m.dim();
  const IntMatrix nil = m.pow(power) - IntMatrix::identity(n);
  std::vector<std::size_t> ranks(n + 2, 0);
  ranks[0] = n;
  IntMatrix acc = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    acc = acc * nil;
    ranks[k] = acc.rank();
  }
  if (ranks[n] != 0) {
    throw std::domain_error("jordan_block_sizes: M^" + std::to_string(power) + " is not unipotent");
  }
  std::vector<std::size_t> sizes;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t at_least_k = ranks[k - 1] - ranks[k];
    const std::size_t at_least_k1 = ranks[k] - ranks[k + 1];
    for (std::size_t c = 0; c < at_least_k - at_least_k1; ++c) sizes.push_back(k);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::vector<RatPoly> symbolic_power(const IntMatrix& m) {
  if (!is_unipotent(m)) throw std::domain_error("symbolic_power: matrix is not unipotent");
  const std::size_t n = m.dim();
  const IntMatrix nil = m - IntMatrix::identity(n);
  std::vector<RatPoly> entries(n * n);
  IntMatrix nk = IntMatrix::identity(n);
  for (std::size_t k = 0; k < n && !nk.is_zero(); ++k) {
    const RatPoly binom = binomial_poly(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (nk(i, j) != 0) entries[i * n + j] = entries[i * n + j] + binom.scaled(Rational(nk(i, j)));
    nk = nk * nil;
  }
  return entries;
}

std::size_t symbolic_power_growth(const IntMatrix& m) {
  long best = 0;
  for (const auto& e : symbolic_power(m)) best = std::max(best, e.degree());
  return static_cast<std::size_t>(best);
}

void CohomologyAction::validate() const {
  if (k == 0) throw std::invalid_argument("CohomologyAction: dimension k must be positive");
  if (degrees.size() != k + 1) {
    throw std::invalid_argument("CohomologyAction: expected " + std::to_string(k + 1) +
                                " degrees (j = 0..k), got " + std::to_string(degrees.size()));
  }
  for (std::size_t j = 0; j <= k; ++j) {
    const DegreeAction& d = degrees[j];
    if (d.degree != j) throw std::invalid_argument("CohomologyAction: degrees must be listed as j = 0..k");
    if (d.matrix.empty()) throw std::invalid_argument("CohomologyAction: empty matrix at degree " + std::to_string(j));
    if (d.betti < d.matrix.dim()) {
      throw std::invalid_argument("CohomologyAction: betti number b_" + std::to_string(2 * j) +
                                  " smaller than matrix dimension");
    }
    if (j == 0 || j == k) {
      if (d.matrix.dim() != 1 || (d.matrix(0, 0) != 1 && d.matrix(0, 0) != -1)) {
        throw std::invalid_argument("CohomologyAction: degree " + std::to_string(j) +
                                    " action must be the 1x1 matrix [+-1]");
      }
    }
  }
}

std::size_t CohomologyAction::second_betti() const {
  return degrees.size() > 1 ? degrees[1].betti : 1;
}

long HpolBounds::minimum() const {
  long m = std::min({gromov_sum, gromov_s1, gromov_b2});
  if (small_dim) m = std::min(m, *small_dim);
  return m;
}

std::size_t GrowthProfile::s_j(std::size_t j) const {
  for (const auto& d : per_degree)
    if (d.degree == j) return d.s;
  if (per_degree.empty() && j == 1) return s;
  throw std::out_of_range("GrowthProfile: no data for degree " + std::to_string(j));
}

namespace {

DegreeGrowth analyze_degree(std::size_t j, const IntMatrix& m) {
  DegreeGrowth g;
  g.degree = j;
  g.unipotency_order = unipotency_order(m);
  g.jordan_blocks = jordan_block_sizes(m, g.unipotency_order);
  g.s = g.jordan_blocks.front() - 1;
  return g;
}

bool has_positive_entropy(const IntMatrix& m) {
  const UnitCircleResult r = unit_circle_test(characteristic_polynomial(m));
  if (r.zero_root_multiplicity > 0) {
    throw std::domain_error("growth_profile: zero eigenvalue, not an automorphism action");
  }
  return !r.all_roots_of_unity();
}

}  // namespace

GrowthProfile growth_profile(const IntMatrix& m) {
  GrowthProfile p;
  if (has_positive_entropy(m)) {
    p.entropy_zero = false;
    p.positive_entropy_degree = 1;
    return p;
  }
  const DegreeGrowth g = analyze_degree(1, m);
  p.entropy_zero = true;
  p.unipotency_order = g.unipotency_order;
  p.jordan_blocks = g.jordan_blocks;
  p.s = g.s;
  return p;
}

GrowthProfile growth_profile(const CohomologyAction& action) {
  action.validate();
  GrowthProfile p;
  for (const auto& d : action.degrees) {
    if (has_positive_entropy(d.matrix)) {
      p.entropy_zero = false;
      p.positive_entropy_degree = d.degree;
      return p;
    }
  }
  p.entropy_zero = true;
  std::uint64_t order = 1;
  for (const auto& d : action.degrees) {
    DegreeGrowth g = analyze_degree(d.degree, d.matrix);
    if (g.s + 1 > d.betti) throw std::logic_error("growth_profile: s_j exceeds b_{2j} - 1");
    order = std::lcm(order, g.unipotency_order);
    p.per_degree.push_back(std::move(g));
  }
  if (p.per_degree.front().s != 0 || p.per_degree.back().s != 0) {
    throw std::logic_error("growth_profile: s_0 and s_k must vanish");
  }
  p.unipotency_order = order;
  p.jordan_blocks = p.per_degree[std::min<std::size_t>(1, action.k)].jordan_blocks;
  for (std::size_t j = 1; j + 1 <= action.k; ++j) p.s += p.per_degree[j].s;
  p.bounds = hpol_bounds(p, action.k, action.second_betti());
  return p;
}

HpolBounds hpol_bounds(const GrowthProfile& profile, std::size_t k, std::size_t b2) {
  if (!profile.entropy_zero) {
    throw std::domain_error("hpol_bounds: topological entropy positive; h_pol = inf");
  }
  if (k == 0) throw std::invalid_argument("hpol_bounds: dimension must be positive");
  const long kk = static_cast<long>(k);
  long s1 = 0;
  long s_total = 0;
  if (!profile.per_degree.empty()) {
    s1 = k >= 2 ? static_cast<long>(profile.s_j(1)) : 0;
    s_total = static_cast<long>(profile.s);
  } else {
    // A lone matrix is read as the action on H^{1,1}; the missing s_j are
    // bounded through concavity, s_j <= min(j, k - j) s_1.
    s1 = k >= 2 ? static_cast<long>(profile.s) : 0;
    for (long j = 1; j < kk; ++j) s_total += std::min(j, kk - j) * s1;
  }
  HpolBounds b;
  b.gromov_sum = kk + s_total;
  b.gromov_s1 = kk * (s1 + 1);
  b.gromov_b2 = kk * static_cast<long>(b2);
  if (k <= 3) b.small_dim = kk * kk;
  return b;
}

std::string to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::Elliptic: return "Elliptic";
    case SurfaceClass::Parabolic: return "Parabolic";
    case SurfaceClass::Loxodromic: return "Loxodromic";
    case SurfaceClass::LinearGrowthAnomaly: return "LinearGrowthAnomaly";
    case SurfaceClass::HigherGrowthAnomaly: return "HigherGrowthAnomaly";
  }
  return "?";
}

std::string to_string(UnitCircleVerdict v) {
  return v == UnitCircleVerdict::AllRootsOfUnity ? "AllRootsOfUnity" : "HasModulusGreaterOne";
}

SurfaceClass surface_class(const IntMatrix& m) {
  const BigInt det = m.determinant();
  if (det != 1 && det != -1) {
    throw std::invalid_argument("surface_class: matrix is not invertible over the integers");
  }
  if (!unit_circle_test(characteristic_polynomial(m)).all_roots_of_unity()) {
    return SurfaceClass::Loxodromic;
  }
  const std::uint64_t order = unipotency_order(m);
  const std::size_t max_block = jordan_block_sizes(m, order).front();
  switch (max_block) {
    case 1: return SurfaceClass::Elliptic;
    case 2: return SurfaceClass::LinearGrowthAnomaly;
    case 3: return SurfaceClass::Parabolic;
    default: return SurfaceClass::HigherGrowthAnomaly;
  }
}

}  // namespace polyent::cohomology
