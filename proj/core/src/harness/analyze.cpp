#include "polyent/harness/analyze.hpp"

#include <limits>
#include <sstream>

#include "json.hpp"

namespace polyent::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string blocks_string(const std::vector<std::size_t>& blocks) {
  std::string s = "[";
  for (std::size_t i = 0; i < blocks.size(); ++i) s += (i ? ", " : "") + std::to_string(blocks[i]);
  return s + "]";
}

ordered_json matrix_json(const cohomology::IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const auto& v = m(i, j);
      // Entries beyond 64 bits are emitted as strings, which the reader accepts back.
      if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        row.push_back(v.str());
      else
        row.push_back(static_cast<long long>(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

MatrixAnalysis analyze_matrix(const MatrixInput& input, std::size_t k, std::optional<std::size_t> b2) {
  MatrixAnalysis a;
  a.input = input;
  if (const auto* m = std::get_if<cohomology::IntMatrix>(&input)) {
    if (k == 0) throw std::invalid_argument("analyze_matrix: dimension k must be positive");
    a.k = k;
    a.b2 = b2.value_or(m->dim());
    if (a.b2 < m->dim()) throw std::invalid_argument("analyze_matrix: b2 smaller than the matrix size");
    a.char_poly = cohomology::characteristic_polynomial(*m);
    a.unit_circle = cohomology::unit_circle_test(*a.char_poly);
    if (a.unit_circle->zero_root_multiplicity > 0)
      throw std::domain_error("analyze_matrix: zero eigenvalue; not the action of an automorphism");
    a.profile = cohomology::growth_profile(*m);
    if (a.profile.entropy_zero) a.bounds = cohomology::hpol_bounds(a.profile, a.k, a.b2);
    try {
      a.surface = cohomology::surface_class(*m);
    } catch (const std::invalid_argument&) {
    }
  } else {
    const auto& act = std::get<cohomology::CohomologyAction>(input);
    a.k = act.k;
    a.b2 = act.second_betti();
    a.profile = cohomology::growth_profile(act);
    a.bounds = a.profile.bounds;
  }
  if (!a.profile.entropy_zero) {
    a.headline = "topological entropy positive; h_pol = ∞";
  } else {
    a.headline = "topological entropy zero; s = " + std::to_string(a.profile.s) +
                 "; h_pol <= " + std::to_string(a.bounds->minimum());
  }
  return a;
}

MatrixAnalysis analyze_matrix(std::string_view text, std::size_t k, std::optional<std::size_t> b2) {
  return analyze_matrix(parse_matrix_input(text), k, b2);
}

std::string render_text(const MatrixAnalysis& a) {
  std::ostringstream os;
  os << a.headline << "\n";
  if (const auto* m = std::get_if<cohomology::IntMatrix>(&a.input)) {
    os << "matrix (" << m->dim() << "x" << m->dim() << ", read on H^{1,1}, k = " << a.k << ", b2 = " << a.b2
       << "):\n"
       << m->to_string() << "\n";
    os << "characteristic polynomial: " << a.char_poly->to_string() << "\n";
    os << "unit circle test: " << cohomology::to_string(a.unit_circle->verdict) << "\n";
  } else {
    os << "cohomology action, k = " << a.k << ", b2 = " << a.b2 << "\n";
  }
  const auto& p = a.profile;
  os << "entropy_zero: " << (p.entropy_zero ? "true" : "false") << "\n";
  if (!p.entropy_zero) {
    os << "expanding degree: j = " << p.positive_entropy_degree.value_or(1) << "\n";
  } else {
    os << "unipotency order: " << p.unipotency_order << "\n";
    os << "jordan blocks: " << blocks_string(p.jordan_blocks) << "\n";
    for (const auto& d : p.per_degree)
      os << "  j = " << d.degree << ": s_j = " << d.s << ", blocks " << blocks_string(d.jordan_blocks) << "\n";
    os << "s: " << p.s << "\n";
    const auto& b = *a.bounds;
    os << "bounds: k+s = " << b.gromov_sum << ", k(s1+1) = " << b.gromov_s1 << ", k*b2 = " << b.gromov_b2;
    if (b.small_dim) os << ", k^2 = " << *b.small_dim;
    os << "; min = " << b.minimum() << "\n";
  }
  if (a.surface) os << "surface class: " << cohomology::to_string(*a.surface) << "\n";
  return os.str();
}

std::string render_json(const MatrixAnalysis& a) {
  ordered_json j;
  j["headline"] = a.headline;
  if (const auto* m = std::get_if<cohomology::IntMatrix>(&a.input)) {
    j["input"] = "matrix";
    j["matrix"] = matrix_json(*m);
    j["characteristic_polynomial"] = a.char_poly->to_string();
    j["unit_circle"] = cohomology::to_string(a.unit_circle->verdict);
  } else {
    j["input"] = "action";
  }
  j["k"] = a.k;
  j["b2"] = a.b2;
  const auto& p = a.profile;
  j["entropy_zero"] = p.entropy_zero;
  if (!p.entropy_zero) {
    j["positive_entropy_degree"] = p.positive_entropy_degree.value_or(1);
    j["h_pol"] = "inf";
  } else {
    j["unipotency_order"] = p.unipotency_order;
    j["jordan_blocks"] = p.jordan_blocks;
    ordered_json per = ordered_json::array();
    for (const auto& d : p.per_degree)
      per.push_back({{"j", d.degree}, {"s", d.s}, {"unipotency_order", d.unipotency_order}, {"jordan_blocks", d.jordan_blocks}});
    if (!per.empty()) j["per_degree"] = per;
    j["s"] = p.s;
    const auto& b = *a.bounds;
    ordered_json bj;
    bj["gromov_sum"] = b.gromov_sum;
    bj["gromov_s1"] = b.gromov_s1;
    bj["gromov_b2"] = b.gromov_b2;
    if (b.small_dim) bj["small_dim"] = *b.small_dim;
    bj["minimum"] = b.minimum();
    j["bounds"] = bj;
  }
  if (a.surface) j["surface_class"] = cohomology::to_string(*a.surface);
  return j.dump(2) + "\n";
}

}  // namespace polyent::harness
