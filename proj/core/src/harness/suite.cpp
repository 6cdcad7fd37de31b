#include "polyent/harness/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "polyent/common/random.hpp"

namespace polyent::harness {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void parse_overrides(const json& v, const std::string& path, EstimatorOverrides& o, std::vector<std::string>& problems,
                     bool allow_system) {
  for (const auto& [key, val] : v.items()) {
    if (key == "eps") {
      std::vector<double> eps;
      bool ok = val.is_array() && !val.empty();
      for (std::size_t i = 0; ok && i < val.size(); ++i) {
        ok = val[i].is_number();
        if (ok) eps.push_back(val[i].get<double>());
      }
      if (ok)
        o.eps = eps;
      else
        problems.push_back(path + ".eps: expected a non-empty array of numbers");
    } else if (key == "n_max" || key == "pool") {
      if (!val.is_number_unsigned()) {
        problems.push_back(path + "." + key + ": expected a nonnegative integer");
        continue;
      }
      (key == "n_max" ? o.n_max : o.pool) = val.get<std::size_t>();
    } else if (key == "tolerance") {
      if (!val.is_number() || !(val.get<double>() > 0.0))
        problems.push_back(path + ".tolerance: expected a positive number");
      else
        o.tolerance = val.get<double>();
    } else if (!(allow_system && key == "system")) {
      problems.push_back(path + ": unknown key '" + key + "'");
    }
  }
}

void apply(const EstimatorOverrides& o, lab::BowenParams& p, double& tol) {
  if (o.eps) p.eps_list = *o.eps;
  if (o.pool) p.pool_size = *o.pool;
  if (o.n_max) {
    std::vector<std::size_t> kept;
    for (std::size_t n : p.schedule())
      if (n <= *o.n_max) kept.push_back(n);
    p.n_schedule = kept;
  }
  if (o.tolerance) tol = *o.tolerance;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string optional_fixed(const std::optional<double>& x, int digits) { return x ? fixed(*x, digits) : ""; }

}  // namespace

std::string fixed(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);   // no "-0.000"
  return s;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "Consistent";
    case Verdict::Inconsistent: return "Inconsistent";
    case Verdict::Untested: return "Untested";
  }
  return "?";
}

SuiteConfig parse_suite_config(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({origin + ": " + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({origin + ": expected an object"});
  std::vector<std::string> problems;
  SuiteConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    const std::string path = origin + ": " + key;
    if (key == "name") {
      if (v.is_string())
        cfg.name = v.get<std::string>();
      else
        problems.push_back(path + ": expected a string");
    } else if (key == "seed") {
      if (v.is_number_unsigned())
        cfg.seed = v.get<std::uint64_t>();
      else
        problems.push_back(path + ": expected a nonnegative integer");
    } else if (key == "catalog") {
      if (v.is_string())
        cfg.catalog = v.get<std::string>();
      else
        problems.push_back(path + ": expected a path");
    } else if (key == "workers") {
      if (v.is_number_unsigned() && v.get<unsigned>() >= 1)
        cfg.workers = v.get<unsigned>();
      else
        problems.push_back(path + ": expected a positive integer");
    } else if (key == "overrides") {
      if (v.is_object())
        parse_overrides(v, path, cfg.overrides, problems, false);
      else
        problems.push_back(path + ": expected an object");
    } else if (key == "systems") {
      if (!v.is_array()) {
        problems.push_back(path + ": expected an array");
        continue;
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string ep = path + "[" + std::to_string(i) + "]";
        SuiteEntry e;
        if (v[i].is_string()) {
          e.system = v[i].get<std::string>();
        } else if (v[i].is_object() && v[i].contains("system") && v[i]["system"].is_string()) {
          e.system = v[i]["system"].get<std::string>();
          parse_overrides(v[i], ep, e.overrides, problems, true);
        } else {
          problems.push_back(ep + ": expected a system name or {\"system\": name, ...}");
          continue;
        }
        cfg.entries.push_back(std::move(e));
      }
    } else {
      problems.push_back(origin + ": unknown key '" + key + "'");
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path.string() + ": cannot open suite config"});
  std::stringstream ss;
  ss << in.rdbuf();
  SuiteConfig cfg = parse_suite_config(ss.str(), path.string());
  if (cfg.catalog && cfg.catalog->is_relative()) cfg.catalog = path.parent_path() / *cfg.catalog;
  return cfg;
}

std::vector<std::string> builtin_suite_names() { return {"reference-values", "smoke"}; }

SuiteConfig builtin_suite(const std::string& name) {
  SuiteConfig cfg;
  cfg.name = name;
  if (name == "reference-values") {
    for (const char* s : {"shear-T2", "e2-product-shear", "pgl3-isometry", "pgl3-saddle-diagonal", "pgl3-saddle-jordan",
                          "pgl3-mixed-diagonal", "pgl3-parabolic-rotation", "pgl3-full-jordan", "rotation-T2"})
      cfg.entries.push_back({s, {}});
    return cfg;
  }
  if (name == "smoke") {
    SuiteEntry shear{"shear-T2", {}};
    shear.overrides.pool = 20000;
    shear.overrides.n_max = 512;
    cfg.entries = {shear, {"rotation-T2", {}}, {"pgl3-mixed-diagonal", {}}, {"borichev-strict", {}}};
    return cfg;
  }
  throw ConfigError({"unknown built-in suite '" + name + "'"});
}

ReconciliationRow reconcile(std::string system, const Prediction& prediction, std::optional<long> upper_bound,
                            std::optional<double> estimated, double tolerance, std::string note) {
  ReconciliationRow r;
  r.system = std::move(system);
  r.predicted = prediction.value;
  r.predicted_source = prediction.source;
  r.upper_bound = upper_bound;
  r.estimated = estimated;
  r.tolerance = tolerance;
  r.note = std::move(note);
  if (!estimated) {
    r.verdict = Verdict::Untested;
    return r;
  }
  const bool within_bound = !upper_bound || *estimated <= static_cast<double>(*upper_bound) + kBoundSlack;
  if (!within_bound) {
    r.verdict = Verdict::Inconsistent;
    return r;
  }
  if (!prediction.value) {
    r.verdict = Verdict::Untested;
    return r;
  }
  r.verdict = std::abs(*estimated - *prediction.value) <= tolerance ? Verdict::Consistent : Verdict::Inconsistent;
  return r;
}

std::uint64_t system_seed(std::uint64_t master, const std::string& system) {
  return derive_seed(master, {fnv1a(system)});
}

lab::BowenParams entry_params(const SuiteConfig& config, const SuiteEntry& entry, const CatalogSystem& system) {
  lab::BowenParams p = system.estimator->params(system.dyn(), system_seed(config.seed, entry.system), config.workers);
  double tol = system.tolerance;
  apply(config.overrides, p, tol);
  apply(entry.overrides, p, tol);
  return p;
}

namespace {

double entry_tolerance(const SuiteConfig& config, const SuiteEntry& entry, const CatalogSystem& system) {
  double tol = system.tolerance;
  if (config.overrides.tolerance) tol = *config.overrides.tolerance;
  if (entry.overrides.tolerance) tol = *entry.overrides.tolerance;
  return tol;
}

const Catalog& pick_catalog(const SuiteConfig& config, const Catalog& given, std::optional<Catalog>& own) {
  if (config.catalog) {
    own = load_catalog(*config.catalog);
    return *own;
  }
  return given;
}

}  // namespace

std::vector<std::string> validate_suite(const SuiteConfig& config, const Catalog& given) {
  std::vector<std::string> problems;
  std::optional<Catalog> own;
  const Catalog* catalog = &given;
  try {
    catalog = &pick_catalog(config, given, own);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < config.entries.size(); ++i) {
    const auto& e = config.entries[i];
    const std::string path = "systems[" + std::to_string(i) + "] (" + e.system + ")";
    if (!seen.insert(e.system).second) problems.push_back(path + ": listed twice");
    const CatalogSystem* s = catalog->find(e.system);
    if (!s) {
      problems.push_back(path + ": unknown system; the catalog has " + std::to_string(catalog->systems.size()) +
                         " entries");
      continue;
    }
    if (!s->estimator) {
      // Suite-wide overrides simply do not apply here; per-entry ones are a mistake.
      const bool overridden = e.overrides.eps || e.overrides.pool || e.overrides.n_max;
      if (overridden) problems.push_back(path + ": estimator overrides given for a system without estimator settings");
      continue;
    }
    try {
      const lab::BowenParams p = entry_params(config, e, *s);
      p.validate();
      if (p.schedule().size() < 4)
        problems.push_back(path + ": fewer than 4 values of n left after n_max; the fit needs 4");
    } catch (const std::exception& ex) {
      problems.push_back(path + ": " + ex.what());
    }
  }
  if (config.workers == 0) problems.push_back("workers: must be positive");
  return problems;
}

int SuiteReport::exit_code() const {
  for (const auto& r : rows)
    if (r.verdict == Verdict::Inconsistent) return kExitInconsistent;
  return kExitOk;
}

SuiteReport run_suite(const SuiteConfig& config, const Catalog& given) {
  if (auto problems = validate_suite(config, given); !problems.empty()) throw ConfigError(std::move(problems));
  std::optional<Catalog> own;
  const Catalog& catalog = pick_catalog(config, given, own);

  SuiteReport report;
  report.name = config.name;
  report.seed = config.seed;
  for (const auto& e : config.entries) {
    const CatalogSystem& s = catalog.at(e.system);
    SystemRun run;
    run.system = e.system;
    std::string note;
    if (s.estimator) {
      const auto t0 = std::chrono::steady_clock::now();
      const lab::BowenParams p = entry_params(config, e, s);
      try {
        run.curve = lab::separation_curve(s.dyn(), p, e.system);
        run.fit = lab::fit_exponent(*run.curve);
        note = run.fit->caveat;
      } catch (const std::exception& ex) {
        run.error = ex.what();
        note = "estimation failed: " + run.error;
      }
      run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } else {
      note = "no estimator settings";
    }
    const Prediction pred = predicted_hpol(s);
    if (pred.infinite) note += std::string(note.empty() ? "" : "; ") + "h_pol = inf (positive topological entropy)";
    std::optional<double> est;
    if (run.fit) est = run.fit->slope;
    report.rows.push_back(
        reconcile(e.system, pred, cohomology_upper_bound(s), est, entry_tolerance(config, e, s), note));
    report.runs.push_back(std::move(run));
  }
  return report;
}

std::string runs_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "system,eps,n,sep_count,saturated,seed\n";
  for (const auto& run : r.runs) {
    if (!run.curve) continue;
    for (const auto& rec : run.curve->records)
      os << run.system << ',' << fixed(rec.eps, 6) << ',' << rec.n << ',' << rec.sep_count << ','
         << (rec.saturated ? "true" : "false") << ',' << rec.seed << '\n';
  }
  return os.str();
}

std::string plotdata_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "system,eps,n,count,saturated,seed\n";
  for (const auto& run : r.runs) {
    if (!run.curve) continue;
    for (const auto& rec : run.curve->records)
      os << run.system << ',' << fixed(rec.eps, 6) << ',' << rec.n << ',' << rec.sep_count << ','
         << (rec.saturated ? "true" : "false") << ',' << rec.seed << '\n';
  }
  return os.str();
}

std::string reconciliation_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "system,predicted_hpol,predicted_source,upper_bound,estimated_exponent,tolerance,verdict\n";
  for (const auto& row : r.rows)
    os << row.system << ',' << optional_fixed(row.predicted, 4) << ',' << row.predicted_source << ','
       << (row.upper_bound ? std::to_string(*row.upper_bound) : "") << ',' << optional_fixed(row.estimated, 4) << ','
       << fixed(row.tolerance, 4) << ',' << to_string(row.verdict) << '\n';
  return os.str();
}

std::string summary_json(const SuiteReport& r) {
  // Doubles are written as fixed-precision strings so the bytes do not depend
  // on the JSON library's float printer.
  ordered_json j;
  j["suite"] = r.name;
  j["seed"] = r.seed;
  std::size_t counts[3] = {0, 0, 0};
  ordered_json systems = ordered_json::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    const auto& run = r.runs[i];
    ++counts[static_cast<int>(row.verdict)];
    ordered_json s;
    s["system"] = row.system;
    s["verdict"] = to_string(row.verdict);
    s["predicted_hpol"] = row.predicted ? json(fixed(*row.predicted, 4)) : json(nullptr);
    s["predicted_source"] = row.predicted_source;
    s["upper_bound"] = row.upper_bound ? json(*row.upper_bound) : json(nullptr);
    s["estimated_exponent"] = row.estimated ? json(fixed(*row.estimated, 4)) : json(nullptr);
    s["tolerance"] = fixed(row.tolerance, 4);
    if (run.fit) {
      const auto& f = *run.fit;
      ordered_json fit;
      fit["chosen_eps"] = fixed(f.chosen_eps, 6);
      fit["n_lo"] = f.n_lo;
      fit["n_hi"] = f.n_hi;
      fit["r_squared"] = fixed(f.r_squared, 4);
      ordered_json per = ordered_json::array();
      for (const auto& e : f.per_eps)
        per.push_back({{"eps", fixed(e.eps, 6)},
                       {"usable", e.usable},
                       {"slope", fixed(e.slope, 4)},
                       {"points", e.points},
                       {"n_lo", e.n_lo},
                       {"n_hi", e.n_hi}});
      fit["per_eps"] = per;
      s["fit"] = fit;
    }
    if (run.curve) {
      s["envelope_adjustments"] = run.curve->envelope_adjustments;
      s["bowen_monotone"] = run.curve->bowen_monotone;
    }
    if (!row.note.empty()) s["note"] = row.note;
    systems.push_back(std::move(s));
  }
  j["consistent"] = counts[0];
  j["inconsistent"] = counts[1];
  j["untested"] = counts[2];
  j["exit_code"] = r.exit_code();
  j["systems"] = systems;
  return j.dump(2) + "\n";
}

void write_suite_outputs(const SuiteReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, std::string> files[] = {{"runs.csv", runs_csv(r)},
                                                       {"plotdata.csv", plotdata_csv(r)},
                                                       {"reconciliation.csv", reconciliation_csv(r)},
                                                       {"summary.json", summary_json(r)}};
  for (const auto& [name, text] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  }
}

}  // namespace polyent::harness
