#include "polyent/harness/catalog.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "polyent/lab/exact_cover.hpp"
#include "polyent/normal_forms/classify.hpp"

namespace polyent::harness {

namespace {

using json = nlohmann::json;
using Complex = std::complex<double>;

std::string join_problems(const std::vector<std::string>& problems) {
  std::string s;
  for (std::size_t i = 0; i < problems.size(); ++i) s += (i ? "\n" : "") + problems[i];
  return s;
}

struct Ctx {
  std::vector<std::string> problems;
  void add(const std::string& path, const std::string& msg) { problems.push_back(path + ": " + msg); }
};

void check_keys(Ctx& c, const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) c.add(path, "unknown key '" + key + "'");
  }
}

std::optional<double> number(Ctx& c, const json& v, const std::string& path) {
  if (!v.is_number()) {
    c.add(path, "expected a number");
    return std::nullopt;
  }
  return v.get<double>();
}

std::optional<std::size_t> count(Ctx& c, const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) {
    c.add(path, "expected a nonnegative integer");
    return std::nullopt;
  }
  return v.get<std::size_t>();
}

std::optional<std::vector<double>> number_list(Ctx& c, const json& v, const std::string& path) {
  if (!v.is_array()) {
    c.add(path, "expected an array of numbers");
    return std::nullopt;
  }
  std::vector<double> out;
  bool ok = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto x = number(c, v[i], path + "[" + std::to_string(i) + "]");
    ok = ok && x.has_value();
    if (x) out.push_back(*x);
  }
  return ok ? std::optional(out) : std::nullopt;
}

// A number, [re, im], or {"turns": t, "modulus": m} for m e^{2 pi i t}.
std::optional<Complex> complex_value(Ctx& c, const json& v, const std::string& path) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  if (v.is_object() && v.contains("turns") && v["turns"].is_number()) {
    check_keys(c, v, path, {"turns", "modulus"});
    double m = 1.0;
    if (v.contains("modulus")) {
      if (!v["modulus"].is_number()) {
        c.add(path + ".modulus", "expected a number");
        return std::nullopt;
      }
      m = v["modulus"].get<double>();
    }
    return std::polar(m, 2.0 * std::numbers::pi * v["turns"].get<double>());
  }
  c.add(path, "expected a number, [re, im] or {\"turns\": t}");
  return std::nullopt;
}

std::optional<std::vector<Complex>> complex_list(Ctx& c, const json& v, const std::string& path) {
  if (!v.is_array()) {
    c.add(path, "expected an array");
    return std::nullopt;
  }
  std::vector<Complex> out;
  bool ok = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto z = complex_value(c, v[i], path + "[" + std::to_string(i) + "]");
    ok = ok && z.has_value();
    if (z) out.push_back(*z);
  }
  return ok ? std::optional(out) : std::nullopt;
}

std::optional<cohomology::IntMatrix> int_matrix(Ctx& c, const json& v, const std::string& path) {
  try {
    return parse_int_matrix(v.is_string() ? v.get<std::string>() : v.dump());
  } catch (const ParseError& e) {
    c.add(path, e.reason());
  }
  return std::nullopt;
}

std::optional<Eigen::MatrixXcd> complex_matrix(Ctx& c, const json& v, std::size_t n, const std::string& path) {
  if (!v.is_array() || v.size() != n) {
    c.add(path, "expected " + std::to_string(n) + " rows");
    return std::nullopt;
  }
  Eigen::MatrixXcd h(n, n);
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != n) {
      c.add(rp, "expected " + std::to_string(n) + " entries");
      ok = false;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      auto z = complex_value(c, v[i][j], rp + "[" + std::to_string(j) + "]");
      if (z) h(i, j) = *z;
      ok = ok && z.has_value();
    }
  }
  return ok ? std::optional(h) : std::nullopt;
}

std::optional<std::vector<std::size_t>> n_schedule(Ctx& c, const json& v, const std::string& path) {
  if (v.is_array()) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto n = count(c, v[i], path + "[" + std::to_string(i) + "]");
      if (!n) return std::nullopt;
      out.push_back(*n);
    }
    return out;
  }
  if (v.is_object()) {
    check_keys(c, v, path, {"lo", "hi", "ratio"});
    const auto lo = v.contains("lo") ? count(c, v["lo"], path + ".lo") : std::nullopt;
    const auto hi = v.contains("hi") ? count(c, v["hi"], path + ".hi") : std::nullopt;
    double ratio = 2.0;
    if (v.contains("ratio")) {
      auto r = number(c, v["ratio"], path + ".ratio");
      if (!r) return std::nullopt;
      ratio = *r;
    }
    if (!lo || !hi) {
      c.add(path, "needs integer 'lo' and 'hi'");
      return std::nullopt;
    }
    const std::size_t n_lo = lo.value(), n_hi = hi.value();
    if (n_lo < 1 || n_hi < n_lo || !(ratio > 1.0)) {
      c.add(path, "needs 1 <= lo <= hi and ratio > 1");
      return std::nullopt;
    }
    return lab::BowenParams::geometric_schedule(n_lo, n_hi, ratio);
  }
  c.add(path, "expected a list of n or {\"lo\", \"hi\", \"ratio\"}");
  return std::nullopt;
}

// Chart point from user coordinates: reals on tori and skew products,
// homogeneous complex coordinates on projective spaces.
std::optional<zoo::Point> chart_point(Ctx& c, const zoo::DynSystem& s, const json& v, const std::string& path) {
  if (const auto* pm = std::get_if<zoo::ProjectiveMap>(&s)) {
    auto z = complex_list(c, v, path);
    if (!z) return std::nullopt;
    if (z->size() != pm->coords()) {
      c.add(path, "expected " + std::to_string(pm->coords()) + " homogeneous coordinates");
      return std::nullopt;
    }
    double norm = 0.0;
    zoo::Point p;
    for (const auto& w : *z) {
      p.push_back(w.real());
      p.push_back(w.imag());
      norm += std::norm(w);
    }
    if (norm == 0.0) {
      c.add(path, "all coordinates are zero");
      return std::nullopt;
    }
    return zoo::canonical(s, std::move(p));
  }
  auto x = number_list(c, v, path);
  if (!x) return std::nullopt;
  if (x->size() != zoo::state_dim(s)) {
    c.add(path, "expected " + std::to_string(zoo::state_dim(s)) + " coordinates");
    return std::nullopt;
  }
  return zoo::canonical(s, *x);
}

std::optional<zoo::SamplerSpec> sampler(Ctx& c, const json& v, const zoo::DynSystem& s, const std::string& path) {
  if (!v.is_object()) {
    c.add(path, "expected an object");
    return std::nullopt;
  }
  check_keys(c, v, path, {"kind", "center", "half_widths", "log10_ranges", "origin", "axes", "quasi_random"});
  zoo::SamplerSpec sp;
  const std::size_t before = c.problems.size();
  if (v.contains("kind")) {
    try {
      sp.kind = zoo::sampler_kind_from_string(v["kind"].is_string() ? v["kind"].get<std::string>() : v["kind"].dump());
    } catch (const std::exception& e) {
      c.add(path + ".kind", e.what());
    }
  }
  if (v.contains("center"))
    if (auto x = number_list(c, v["center"], path + ".center")) sp.center = *x;
  if (v.contains("half_widths"))
    if (auto x = number_list(c, v["half_widths"], path + ".half_widths")) sp.half_widths = *x;
  if (v.contains("log10_ranges")) {
    const json& r = v["log10_ranges"];
    if (!r.is_array()) c.add(path + ".log10_ranges", "expected an array of [lo, hi]");
    for (std::size_t i = 0; r.is_array() && i < r.size(); ++i) {
      auto x = number_list(c, r[i], path + ".log10_ranges[" + std::to_string(i) + "]");
      if (x && x->size() == 2)
        sp.log10_ranges.emplace_back((*x)[0], (*x)[1]);
      else if (x)
        c.add(path + ".log10_ranges[" + std::to_string(i) + "]", "expected [lo, hi]");
    }
  }
  if (v.contains("origin"))
    if (auto z = complex_list(c, v["origin"], path + ".origin")) sp.origin = *z;
  if (v.contains("axes")) {
    const json& a = v["axes"];
    if (!a.is_array()) c.add(path + ".axes", "expected an array");
    for (std::size_t i = 0; a.is_array() && i < a.size(); ++i) {
      const std::string ap = path + ".axes[" + std::to_string(i) + "]";
      if (!a[i].is_object()) {
        c.add(ap, "expected an object");
        continue;
      }
      check_keys(c, a[i], ap, {"direction", "lo", "hi", "log10"});
      zoo::AffineAxis axis;
      if (auto z = a[i].contains("direction") ? complex_list(c, a[i]["direction"], ap + ".direction") : std::nullopt)
        axis.direction = *z;
      if (auto x = a[i].contains("lo") ? number(c, a[i]["lo"], ap + ".lo") : std::nullopt) axis.lo = *x;
      if (auto x = a[i].contains("hi") ? number(c, a[i]["hi"], ap + ".hi") : std::nullopt) axis.hi = *x;
      if (a[i].contains("log10")) {
        if (a[i]["log10"].is_boolean())
          axis.log10 = a[i]["log10"].get<bool>();
        else
          c.add(ap + ".log10", "expected true or false");
      }
      sp.axes.push_back(std::move(axis));
    }
  }
  if (v.contains("quasi_random")) {
    if (v["quasi_random"].is_boolean())
      sp.quasi_random = v["quasi_random"].get<bool>();
    else
      c.add(path + ".quasi_random", "expected true or false");
  }
  if (c.problems.size() != before) return std::nullopt;
  try {
    sp.validate(s);
  } catch (const std::exception& e) {
    c.add(path, e.what());
    return std::nullopt;
  }
  return sp;
}

std::optional<EstimatorSpec> estimator(Ctx& c, const json& v, const zoo::DynSystem& s, const std::string& path) {
  if (!v.is_object()) {
    c.add(path, "expected an object");
    return std::nullopt;
  }
  check_keys(c, v, path, {"eps", "n", "pool", "sampler", "exclude"});
  const std::size_t before = c.problems.size();
  EstimatorSpec e;
  if (v.contains("eps"))
    if (auto x = number_list(c, v["eps"], path + ".eps")) e.eps = *x;
  if (v.contains("n"))
    if (auto x = n_schedule(c, v["n"], path + ".n")) e.n_schedule = *x;
  if (v.contains("pool"))
    if (auto x = count(c, v["pool"], path + ".pool")) e.pool = *x;
  if (v.contains("sampler"))
    if (auto x = sampler(c, v["sampler"], s, path + ".sampler")) e.sampler = *x;
  if (v.contains("exclude")) {
    const json& ex = v["exclude"];
    if (!ex.is_array()) c.add(path + ".exclude", "expected an array of {center, radius}");
    for (std::size_t i = 0; ex.is_array() && i < ex.size(); ++i) {
      const std::string bp = path + ".exclude[" + std::to_string(i) + "]";
      if (!ex[i].is_object() || !ex[i].contains("center") || !ex[i].contains("radius")) {
        c.add(bp, "expected {\"center\": ..., \"radius\": r}");
        continue;
      }
      check_keys(c, ex[i], bp, {"center", "radius"});
      auto p = chart_point(c, s, ex[i]["center"], bp + ".center");
      auto r = number(c, ex[i]["radius"], bp + ".radius");
      if (r && !(*r > 0.0)) c.add(bp + ".radius", "must be positive");
      if (p && r) e.excluded.push_back({*p, *r});
    }
  }
  if (c.problems.size() != before) return std::nullopt;
  try {
    e.params(s, 1, 1).validate();
  } catch (const std::exception& ex) {
    c.add(path, ex.what());
    return std::nullopt;
  }
  return e;
}

std::optional<CohomologyData> cohomology_data(Ctx& c, const json& v, const std::string& path) {
  if (!v.is_object()) {
    c.add(path, "expected an object");
    return std::nullopt;
  }
  check_keys(c, v, path, {"k", "h11", "b2", "action"});
  if (v.contains("action")) {
    if (v.contains("h11") || v.contains("k")) c.add(path, "give either 'action' or 'k' with 'h11'");
    try {
      auto act = parse_action_document(v["action"].dump());
      const std::size_t k = act.k, b2 = act.second_betti();
      return CohomologyData{std::move(act), k, b2};
    } catch (const ParseError& e) {
      c.add(path + ".action", e.reason());
    }
    return std::nullopt;
  }
  if (!v.contains("k") || !v.contains("h11")) {
    c.add(path, "needs 'k' and 'h11', or 'action'");
    return std::nullopt;
  }
  auto k = count(c, v["k"], path + ".k");
  auto m = int_matrix(c, v["h11"], path + ".h11");
  if (!k || !m) return std::nullopt;
  if (*k == 0) {
    c.add(path + ".k", "must be positive");
    return std::nullopt;
  }
  std::size_t b2 = m->dim();
  if (v.contains("b2")) {
    auto b = count(c, v["b2"], path + ".b2");
    if (!b) return std::nullopt;
    if (*b < m->dim()) {
      c.add(path + ".b2", "smaller than the size of h11");
      return std::nullopt;
    }
    b2 = *b;
  }
  return CohomologyData{*m, *k, b2};
}

void build_system(Ctx& c, CatalogSystem& out, const json& v, const std::string& path) {
  const std::string& fam = out.family;
  if (fam == "torus") {
    check_keys(c, v, path, {"name", "family", "description", "matrix", "translation", "cohomology", "declared_hpol",
                            "tolerance", "estimator", "isometric"});
    if (!v.contains("matrix")) {
      c.add(path, "torus entries need 'matrix'");
      return;
    }
    auto a = int_matrix(c, v["matrix"], path + ".matrix");
    if (!a) return;
    std::vector<double> b(a->dim(), 0.0);
    if (v.contains("translation")) {
      auto t = number_list(c, v["translation"], path + ".translation");
      if (!t) return;
      if (t->size() != a->dim()) {
        c.add(path + ".translation", "expected " + std::to_string(a->dim()) + " entries");
        return;
      }
      b = *t;
    }
    try {
      out.system = zoo::TorusAffineMap(*a, b);
    } catch (const std::exception& e) {
      c.add(path + ".matrix", e.what());
    }
  } else if (fam == "projective") {
    check_keys(c, v, path, {"name", "family", "description", "dim", "matrix", "cohomology", "declared_hpol",
                            "tolerance", "estimator", "isometric"});
    auto dim = v.contains("dim") ? count(c, v["dim"], path + ".dim") : std::nullopt;
    if (!dim || (*dim != 1 && *dim != 2)) {
      c.add(path + ".dim", "projective entries need dim 1 or 2");
      return;
    }
    if (!v.contains("matrix")) {
      c.add(path, "projective entries need 'matrix'");
      return;
    }
    auto h = complex_matrix(c, v["matrix"], *dim + 1, path + ".matrix");
    if (!h) return;
    try {
      out.system = zoo::ProjectiveMap(*dim, *h);
    } catch (const std::exception& e) {
      c.add(path + ".matrix", e.what());
    }
  } else if (fam == "skew") {
    check_keys(c, v, path, {"name", "family", "description", "alpha", "modes", "cohomology", "declared_hpol",
                            "tolerance", "estimator", "isometric"});
    if (!v.contains("alpha") || !v["alpha"].is_string()) {
      c.add(path + ".alpha", "expected a decimal string such as \"0.618033988749894848204586834365638117720309\"");
      return;
    }
    if (!v.contains("modes") || !v["modes"].is_array()) {
      c.add(path + ".modes", "expected an array of {\"k\": k, \"a\": coefficient}");
      return;
    }
    std::vector<std::pair<std::uint64_t, Complex>> modes;
    for (std::size_t i = 0; i < v["modes"].size(); ++i) {
      const json& m = v["modes"][i];
      const std::string mp = path + ".modes[" + std::to_string(i) + "]";
      if (!m.is_object() || !m.contains("k") || !m.contains("a")) {
        c.add(mp, "expected {\"k\": k, \"a\": coefficient}");
        continue;
      }
      check_keys(c, m, mp, {"k", "a"});
      auto k = count(c, m["k"], mp + ".k");
      auto a = complex_value(c, m["a"], mp + ".a");
      if (k && *k == 0) c.add(mp + ".k", "must be positive");
      if (k && a && *k > 0) modes.emplace_back(*k, *a);
    }
    try {
      const std::string alpha = v["alpha"].get<std::string>();
      out.slow = slow_growth::SlowSkew::custom(slow_growth::DecimalFixed::parse(alpha, alpha.size() + 40), modes);
      out.system = out.slow->skew();
    } catch (const std::exception& e) {
      c.add(path + ".alpha", e.what());
    }
  } else if (fam == "slow_skew") {
    check_keys(c, v, path, {"name", "family", "description", "schedule", "amplitude", "cohomology", "declared_hpol",
                            "tolerance", "estimator", "isometric"});
    const json* sch = v.contains("schedule") ? &v["schedule"] : nullptr;
    if (!sch || !sch->is_object() || !sch->contains("q")) {
      c.add(path + ".schedule", "expected {\"q\": [...], \"log10_r\": \"0.1\", \"strict\": true}");
      return;
    }
    check_keys(c, *sch, path + ".schedule", {"q", "log10_r", "strict"});
    std::vector<std::uint64_t> q;
    for (std::size_t i = 0; (*sch)["q"].is_array() && i < (*sch)["q"].size(); ++i)
      if (auto x = count(c, (*sch)["q"][i], path + ".schedule.q[" + std::to_string(i) + "]")) q.push_back(*x);
    const std::string log10_r = sch->contains("log10_r") && (*sch)["log10_r"].is_string()
                                    ? (*sch)["log10_r"].get<std::string>()
                                    : std::string("0.1");
    const bool strict = sch->contains("strict") ? (*sch)["strict"].is_boolean() && (*sch)["strict"].get<bool>() : true;
    double amplitude = 1.0;
    if (v.contains("amplitude"))
      if (auto x = number(c, v["amplitude"], path + ".amplitude")) amplitude = *x;
    try {
      out.slow = slow_growth::SlowSkew::from_schedule(slow_growth::GapSchedule::with_log10_radius(q, log10_r, strict),
                                                     20, amplitude);
      out.system = out.slow->skew();
    } catch (const std::exception& e) {
      c.add(path + ".schedule", e.what());
    }
  } else {
    c.add(path + ".family", "unknown family '" + fam + "' (torus, projective, skew, slow_skew)");
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

lab::BowenParams EstimatorSpec::params(const zoo::DynSystem& s, std::uint64_t seed, unsigned workers) const {
  lab::BowenParams p;
  p.eps_list = eps;
  p.n_schedule = n_schedule;
  p.pool_size = pool;
  p.seed = seed;
  p.sampler = sampler;
  p.workers = workers;
  if (!excluded.empty()) {
    p.restriction = [s, balls = excluded](const zoo::Point& x) {
      for (const auto& b : balls)
        if (zoo::distance(s, x, b.center) <= b.radius) return false;
      return true;
    };
    p.restriction_label = "outside " + std::to_string(excluded.size()) + " excluded balls";
  }
  return p;
}

const CatalogSystem* Catalog::find(const std::string& name) const {
  for (const auto& s : systems)
    if (s.name == name) return &s;
  return nullptr;
}

const CatalogSystem& Catalog::at(const std::string& name) const {
  if (const auto* s = find(name)) return *s;
  throw ConfigError({"unknown system '" + name + "'"});
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& s : systems) out.push_back(s.name);
  return out;
}

Catalog parse_catalog(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({origin + ": " + e.what()});
  }
  Ctx c;
  Catalog cat;
  if (!doc.is_object() || !doc.contains("systems") || !doc["systems"].is_array())
    throw ConfigError({origin + ": expected {\"systems\": [...]}"});
  check_keys(c, doc, origin, {"systems"});
  std::set<std::string> seen;
  const json& arr = doc["systems"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& v = arr[i];
    std::string path = origin + ": systems[" + std::to_string(i) + "]";
    if (!v.is_object() || !v.contains("name") || !v["name"].is_string() || !v.contains("family") ||
        !v["family"].is_string()) {
      c.add(path, "every entry needs string 'name' and 'family'");
      continue;
    }
    CatalogSystem s;
    s.name = v["name"].get<std::string>();
    s.family = v["family"].get<std::string>();
    path += " (" + s.name + ")";
    if (s.name.empty() || s.name.find_first_of(",\"\n") != std::string::npos)
      c.add(path + ".name", "names must be nonempty and free of commas, quotes and newlines");
    if (!seen.insert(s.name).second) c.add(path + ".name", "duplicate name");
    if (v.contains("description")) s.description = v["description"].is_string() ? v["description"].get<std::string>() : "";
    build_system(c, s, v, path);
    if (v.contains("cohomology")) s.cohomology = cohomology_data(c, v["cohomology"], path + ".cohomology");
    if (v.contains("declared_hpol")) s.declared_hpol = number(c, v["declared_hpol"], path + ".declared_hpol");
    if (v.contains("tolerance")) {
      auto t = number(c, v["tolerance"], path + ".tolerance");
      if (t && !(*t > 0.0)) c.add(path + ".tolerance", "must be positive");
      if (t) s.tolerance = *t;
    }
    if (v.contains("isometric")) {
      if (v["isometric"].is_boolean())
        s.isometric = v["isometric"].get<bool>();
      else
        c.add(path + ".isometric", "expected true or false");
    }
    if (v.contains("estimator") && s.system) s.estimator = estimator(c, v["estimator"], *s.system, path + ".estimator");
    cat.systems.push_back(std::move(s));
  }
  if (!c.problems.empty()) throw ConfigError(std::move(c.problems));
  return cat;
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path.string() + ": cannot open catalog"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), path.string());
}

const Catalog& builtin_catalog() {
  static const Catalog cat = parse_catalog(builtin_catalog_text(), "built-in catalog");
  return cat;
}

Eigen::MatrixXcd parse_complex_matrix(const std::string& json_text) {
  json v;
  try {
    v = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("matrix: ") + e.what()});
  }
  Ctx c;
  std::optional<Eigen::MatrixXcd> h;
  if (!v.is_array() || v.empty())
    c.add("matrix", "expected a non-empty array of rows");
  else
    h = complex_matrix(c, v, v.size(), "matrix");
  if (!h) throw ConfigError(std::move(c.problems));
  return *h;
}

zoo::Point parse_chart_point(const zoo::DynSystem& s, const std::string& json_text) {
  json v;
  try {
    v = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("point: ") + e.what()});
  }
  Ctx c;
  auto p = chart_point(c, s, v, "point");
  if (!p) throw ConfigError(std::move(c.problems));
  return *p;
}

Prediction predicted_hpol(const CatalogSystem& s) {
  if (s.declared_hpol) return {s.declared_hpol, "catalog", false};
  if (!s.system) return {std::nullopt, "no system", false};
  if (const auto* t = std::get_if<zoo::TorusAffineMap>(&*s.system)) {
    const auto profile = cohomology::growth_profile(t->matrix());
    if (!profile.entropy_zero) return {std::nullopt, "positive topological entropy", true};
    return {static_cast<double>(lab::real_torus_hpol(profile.jordan_blocks)), "torus Jordan blocks", false};
  }
  if (const auto* p = std::get_if<zoo::ProjectiveMap>(&*s.system)) {
    if (p->dim() == 1) {
      const auto c = normal_forms::classify_pgl2(p->matrix());
      if (c.ambiguous) return {std::nullopt, "pgl2 classifier ambiguous", false};
      return {static_cast<double>(c.predicted_hpol), "pgl2 classifier", false};
    }
    const auto c = normal_forms::classify_pgl3(p->matrix());
    if (c.ambiguous) return {std::nullopt, "pgl3 classifier ambiguous", false};
    return {static_cast<double>(c.predicted_hpol), "pgl3 classifier", false};
  }
  return {std::nullopt, "no exact value", false};
}

std::optional<long> cohomology_upper_bound(const CatalogSystem& s) {
  if (!s.cohomology) return std::nullopt;
  const auto& coh = *s.cohomology;
  if (const auto* m = std::get_if<cohomology::IntMatrix>(&coh.action)) {
    const auto profile = cohomology::growth_profile(*m);
    if (!profile.entropy_zero) return std::nullopt;
    return cohomology::hpol_bounds(profile, coh.k, coh.b2).minimum();
  }
  const auto profile = cohomology::growth_profile(std::get<cohomology::CohomologyAction>(coh.action));
  if (!profile.entropy_zero) return std::nullopt;
  return profile.bounds->minimum();
}

}  // namespace polyent::harness
