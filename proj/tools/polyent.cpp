// Command-line front end for the polyent library.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyent/harness/analyze.hpp"
#include "polyent/harness/catalog.hpp"
#include "polyent/harness/suite.hpp"
#include "polyent/lab/coding.hpp"
#include "polyent/lab/northsouth.hpp"
#include "polyent/lab/recurrence.hpp"
#include "polyent/normal_forms/classify.hpp"
#include "polyent/slow_growth/liouville.hpp"

namespace fs = std::filesystem;
using namespace polyent;
using harness::fixed;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to the file, or stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

const harness::Catalog& catalog_for(const std::string& path, harness::Catalog& storage) {
  if (path.empty()) return harness::builtin_catalog();
  storage = harness::load_catalog(path);
  return storage;
}

std::vector<std::size_t> doubling(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
  return out;
}

zoo::SamplerSpec sampler_of(const harness::CatalogSystem& s) {
  return s.estimator ? s.estimator->sampler : zoo::SamplerSpec{};
}

int report_config_error(const std::exception& e) {
  std::cerr << "polyent: configuration error\n" << e.what() << "\n";
  return harness::kExitConfigError;
}

// --- subcommands -----------------------------------------------------------

struct AnalyzeOpts {
  std::string file = "-";
  std::string matrix;
  std::size_t k = 2;
  std::size_t b2 = 0;
  bool json = false;
  std::string out;
};

int cmd_analyze(const AnalyzeOpts& o) {
  const std::string text = o.matrix.empty() ? read_input(o.file) : o.matrix;
  std::optional<std::size_t> b2;
  if (o.b2) b2 = o.b2;
  const auto a = harness::analyze_matrix(text, o.k, b2);
  emit(o.out, o.json ? harness::render_json(a) : harness::render_text(a));
  return 0;
}

struct ClassifyOpts {
  std::string group;
  std::string matrix;
  std::string system;
  std::string catalog;
  double tolerance = normal_forms::kDefaultTolerance;
  std::string out;
};

std::string complex_string(std::complex<double> z) {
  return fixed(z.real(), 9) + (z.imag() < 0 ? " - " : " + ") + fixed(std::abs(z.imag()), 9) + "i";
}

int cmd_classify(const ClassifyOpts& o) {
  Eigen::MatrixXcd h;
  if (!o.system.empty()) {
    harness::Catalog storage;
    const auto& s = catalog_for(o.catalog, storage).at(o.system);
    const auto* pm = s.system ? std::get_if<zoo::ProjectiveMap>(&*s.system) : nullptr;
    if (!pm) throw UsageError(o.system + " is not a projective map");
    h = pm->matrix();
  } else if (!o.matrix.empty()) {
    h = harness::parse_complex_matrix(o.matrix);
  } else {
    throw UsageError("give --matrix or --system");
  }
  const std::size_t want = o.group == "pgl2" ? 2 : 3;
  if (static_cast<std::size_t>(h.rows()) != want)
    throw UsageError(o.group + " needs a " + std::to_string(want) + "x" + std::to_string(want) + " matrix");
  std::ostringstream os;
  if (o.group == "pgl2") {
    const auto c = normal_forms::classify_pgl2(h, o.tolerance);
    os << "class: " << normal_forms::to_string(c.kind) << (c.ambiguous ? " (ambiguous)" : "") << "\n";
    os << "moebius invariant: " << complex_string(c.c_invariant) << "\n";
    os << "predicted h_pol: " << c.predicted_hpol << "\n";
    if (c.ambiguous) {
      os << "candidates:";
      for (auto k : c.candidates) os << " " << normal_forms::to_string(k);
      os << "\n";
    }
  } else {
    const auto c = normal_forms::classify_pgl3(h, o.tolerance);
    os << "class: " << normal_forms::to_string(c.kind) << (c.ambiguous ? " (ambiguous)" : "") << "\n";
    os << "predicted h_pol: " << c.predicted_hpol << "\n";
    os << "eigenvalues:";
    for (const auto& z : c.eigenvalues) os << "  " << complex_string(z);
    os << "\nmodulus ratios: " << fixed(c.modulus_ratios[0], 9) << " " << fixed(c.modulus_ratios[1], 9) << "\n";
    os << "jordan blocks:";
    for (auto b : c.jordan_blocks) os << " " << b;
    os << "\n";
    if (c.ambiguous) {
      os << "candidates:";
      for (auto k : c.candidates) os << " " << normal_forms::to_string(k);
      os << "\n";
    }
  }
  emit(o.out, os.str());
  return 0;
}

struct SuiteOpts {
  std::string config;
  std::string builtin;
  std::vector<std::string> systems;   // estimate: one or more names
  std::string catalog;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<double> eps;
  std::optional<std::size_t> n_max;
  std::optional<std::size_t> pool;
  std::optional<double> tolerance;
  unsigned workers = 1;
  bool dry_run = false;
};

int run_config(harness::SuiteConfig cfg, const SuiteOpts& o) {
  if (o.seed) cfg.seed = *o.seed;
  if (!o.catalog.empty()) cfg.catalog = o.catalog;
  if (!o.eps.empty()) cfg.overrides.eps = o.eps;
  if (o.n_max) cfg.overrides.n_max = o.n_max;
  if (o.pool) cfg.overrides.pool = o.pool;
  if (o.tolerance) cfg.overrides.tolerance = o.tolerance;
  cfg.workers = o.workers;

  const auto& catalog = harness::builtin_catalog();
  const auto problems = harness::validate_suite(cfg, catalog);
  if (!problems.empty()) {
    std::cerr << "polyent: configuration error\n";
    for (const auto& p : problems) std::cerr << "  " << p << "\n";
    return harness::kExitConfigError;
  }
  if (o.dry_run) {
    std::cout << "suite '" << cfg.name << "': " << cfg.entries.size() << " systems, configuration valid\n";
    return harness::kExitOk;
  }
  const auto report = harness::run_suite(cfg, catalog);
  for (const auto& run : report.runs)
    std::cerr << run.system << ": " << fixed(run.seconds, 1) << " s" << (run.error.empty() ? "" : "; " + run.error)
              << "\n";
  if (!o.out.empty()) harness::write_suite_outputs(report, o.out);
  std::cout << harness::reconciliation_csv(report);
  return report.exit_code();
}

int cmd_suite(const SuiteOpts& o) {
  if (o.config.empty() == o.builtin.empty()) throw UsageError("give exactly one of --config and --builtin");
  harness::SuiteConfig cfg = o.config.empty() ? harness::builtin_suite(o.builtin) : harness::load_suite_config(o.config);
  return run_config(std::move(cfg), o);
}

int cmd_estimate(const SuiteOpts& o) {
  harness::SuiteConfig cfg;
  cfg.name = "estimate";
  for (const auto& s : o.systems) cfg.entries.push_back({s, {}});
  return run_config(std::move(cfg), o);
}

struct CodingOpts {
  std::string system;
  std::string catalog;
  std::vector<std::string> balls;   // "<point json>:<radius>"
  std::uint64_t seed = 1;
  std::size_t n_max = 256;
  std::size_t pool = 20000;
  std::string out;
};

int cmd_coding(const CodingOpts& o) {
  harness::Catalog storage;
  const auto& s = catalog_for(o.catalog, storage).at(o.system);
  if (!s.system) throw UsageError(o.system + " has no dynamical system");
  if (o.balls.empty()) throw UsageError("give at least one --ball");
  std::vector<lab::Region> regions;
  for (const auto& b : o.balls) {
    const auto colon = b.rfind(':');
    if (colon == std::string::npos) throw UsageError("--ball expects <point>:<radius>, got " + b);
    const double r = std::stod(b.substr(colon + 1));
    regions.push_back(lab::Region::ball(harness::parse_chart_point(s.dyn(), b.substr(0, colon)), r,
                                        "F" + std::to_string(regions.size() + 1)));
  }
  lab::CodingParams p;
  p.n_schedule = doubling(8, o.n_max);
  p.pool_size = o.pool;
  p.seed = harness::system_seed(o.seed, o.system);
  p.sampler = sampler_of(s);
  const auto res = lab::coding_growth(s.dyn(), regions, p);
  std::ostringstream os;
  os << "n,words,half_pool_words,saturated\n";
  for (const auto& r : res.records)
    os << r.n << ',' << r.words << ',' << r.half_pool_words << ',' << (r.saturated ? "true" : "false") << '\n';
  emit(o.out, os.str());
  std::cerr << "coding growth slope " << fixed(res.fit.slope, 4) << (res.cap_binding ? " (branch cap binding)" : "")
            << "\n";
  return 0;
}

struct RecurrenceOpts {
  std::string system;
  std::string catalog;
  double eps = 0.1;
  std::vector<std::size_t> horizons{100, 1000, 10000};
  std::size_t pool = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_recurrence(const RecurrenceOpts& o) {
  harness::Catalog storage;
  const auto& s = catalog_for(o.catalog, storage).at(o.system);
  if (!s.system) throw UsageError(o.system + " has no dynamical system");
  const auto pool = zoo::sample_points(s.dyn(), sampler_of(s), o.pool, harness::system_seed(o.seed, o.system));
  const auto scan = lab::recurrence_scan(s.dyn(), o.eps, o.horizons, pool);
  std::ostringstream os;
  os << "horizon,max_first_return,fraction_nonreturning\n";
  for (const auto& p : scan.profiles)
    os << p.horizon << ',' << p.max_first_return << ',' << fixed(p.fraction_nonreturning, 6) << '\n';
  emit(o.out, os.str());
  const auto& last = scan.profiles.back();
  std::cerr << "horizon-stable: " << (scan.stable ? "yes" : "no")
            << "; wandering certificate (h_pol >= 1): " << (last.wandering_certificate() ? "yes" : "no") << "\n";
  return 0;
}

struct BorichevOpts {
  std::string system;
  std::string catalog;
  std::vector<std::uint64_t> schedule;
  std::string log10_r = "0.1";
  bool demo = false;
  std::uint64_t n_max = 100000;
  std::size_t grid = 256;
  double eps_target = 0.5;
  std::string out;
};

int cmd_borichev(const BorichevOpts& o) {
  std::optional<slow_growth::SlowSkew> skew;
  if (!o.system.empty()) {
    harness::Catalog storage;
    const auto& s = catalog_for(o.catalog, storage).at(o.system);
    if (!s.slow) throw UsageError(o.system + " is not a Liouville skew product");
    skew = *s.slow;
  } else {
    if (o.schedule.empty()) throw UsageError("give --system or --schedule");
    skew = slow_growth::SlowSkew::from_schedule(
        slow_growth::GapSchedule::with_log10_radius(o.schedule, o.log10_r, !o.demo));
  }
  if (o.n_max < 1000) throw UsageError("--n-max must be at least 1000");

  std::ostream& log = std::cerr;
  if (const auto& sch = skew->schedule()) {
    const auto gap = slow_growth::check_gap_condition(*sch);
    log << "gap condition: " << (gap.holds ? "holds" : "fails at term " + std::to_string(*gap.first_violation)) << "\n";
    log << "analytic bound |a_k| <= r^-k: " << (skew->analytic_bound_holds() ? "holds" : "fails") << "\n";
  }
  log << "alpha = " << skew->alpha().to_string(40) << "...\n" << skew->truncation_note() << "\n";
  try {
    const auto cob = slow_growth::coboundary_coefficients(*skew);
    for (const auto& c : cob.coefficients)
      log << "  k = " << c.k << ": |b_k| = " << fixed(std::abs(c.b), 6) << "\n";
    log << "no decaying solution: " << (cob.no_decaying_solution ? "yes" : "no") << "\n";
  } catch (const slow_growth::ResonanceError& e) {
    log << "coboundary coefficients: " << e.what() << "\n";
  }

  const auto grid = slow_growth::uniform_grid(o.grid);
  const auto probe = slow_growth::equicontinuity_probe(*skew, o.n_max, grid);
  std::vector<std::uint64_t> ns;
  for (const auto& row : probe.staircase) ns.push_back(row.n);
  const auto growth = slow_growth::derivative_growth_report(*skew, ns, grid, o.eps_target);
  log << "derivative growth slope " << fixed(growth.slope, 4) << " for n >= " << growth.window_start
      << (growth.pass ? " (within target)" : " (above target)") << "\n";
  log << "unbounded Birkhoff evidence: " << (probe.unbounded_evidence ? "yes" : "no") << "\n";

  std::ostringstream os;
  os << "n,max_abs_derivative,running_sup_birkhoff\n";
  for (std::size_t i = 0; i < probe.staircase.size(); ++i)
    os << probe.staircase[i].n << ',' << fixed(growth.table[i].max_abs_d, 9) << ','
       << fixed(probe.staircase[i].running_sup, 9) << '\n';
  emit(o.out, os.str());
  return 0;
}

struct CoverOpts {
  double eps = 0.1;
  std::vector<std::size_t> n{250, 500, 1000, 2000};
  std::size_t verify = 10000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_cover(const CoverOpts& o) {
  std::ostringstream os;
  os << "n,eps,size,size_per_step,verified,max_distance,samples\n";
  for (std::size_t n : o.n) {
    lab::NorthSouthParams p;
    p.eps = o.eps;
    p.n = n;
    const lab::NorthSouthCover cover(p);
    const auto v = o.verify ? cover.verify(o.verify, o.seed) : lab::CoverVerification{};
    os << n << ',' << fixed(o.eps, 6) << ',' << cover.size() << ',' << fixed(cover.size_per_step(), 4) << ','
       << (o.verify ? (v.verified ? "true" : "false") : "skipped") << ',' << fixed(v.max_distance, 6) << ','
       << v.samples << '\n';
  }
  emit(o.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyent: polynomial entropy of zero-entropy systems"};
  app.require_subcommand(1);
  std::function<int()> action;

  AnalyzeOpts ao;
  auto* analyze = app.add_subcommand("analyze-matrix", "growth profile and h_pol bounds of an integer cohomology action");
  analyze->add_option("file", ao.file, "matrix or action document ('-' reads stdin)");
  analyze->add_option("--matrix", ao.matrix, "matrix text instead of a file");
  analyze->add_option("--k", ao.k, "complex dimension used for a lone H^{1,1} matrix")->check(CLI::PositiveNumber);
  analyze->add_option("--b2", ao.b2, "second Betti number (default: matrix size)");
  analyze->add_flag("--json", ao.json, "structured output");
  analyze->add_option("--out", ao.out, "output file");
  analyze->callback([&] { action = [&] { return cmd_analyze(ao); }; });

  ClassifyOpts co;
  auto* classify = app.add_subcommand("classify", "classify a projective linear map by polynomial entropy");
  classify->add_option("group", co.group, "pgl2 or pgl3")->required()->check(CLI::IsMember({"pgl2", "pgl3"}));
  classify->add_option("--matrix", co.matrix, "JSON rows; entries are numbers, [re, im] or {\"turns\": t}");
  classify->add_option("--system", co.system, "catalog system instead of --matrix");
  classify->add_option("--catalog", co.catalog, "catalog file (default: built-in)");
  classify->add_option("--tolerance", co.tolerance, "relative tolerance for equality decisions");
  classify->add_option("--out", co.out, "output file");
  classify->callback([&] { action = [&] { return cmd_classify(co); }; });

  SuiteOpts so;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--catalog", so.catalog, "catalog file (default: built-in)");
    sub->add_option("--out", so.out, "directory for runs.csv, plotdata.csv, reconciliation.csv, summary.json");
    sub->add_option("--seed", so.seed, "master seed");
    sub->add_option("--eps", so.eps, "scales, strictly decreasing")->delimiter(',');
    sub->add_option("--n-max", so.n_max, "largest orbit length");
    sub->add_option("--pool", so.pool, "estimator pool size");
    sub->add_option("--tolerance", so.tolerance, "reconciliation tolerance");
    sub->add_option("--workers", so.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--dry-run", so.dry_run, "validate the configuration only");
  };
  auto* estimate = app.add_subcommand("estimate", "separation-growth estimate for catalog systems");
  estimate->add_option("--system", so.systems, "catalog system name (repeatable)")->required();
  add_run_flags(estimate);
  estimate->callback([&] { action = [&] { return cmd_estimate(so); }; });

  auto* suite = app.add_subcommand("suite", "run a suite and reconcile estimates with predictions");
  suite->add_option("--config", so.config, "suite config (JSON)");
  suite->add_option("--builtin", so.builtin, "built-in suite: reference-values or smoke");
  add_run_flags(suite);
  suite->callback([&] { action = [&] { return cmd_suite(so); }; });

  CodingOpts cdo;
  auto* coding = app.add_subcommand("coding", "itinerary coding growth through balls");
  coding->add_option("--system", cdo.system, "catalog system")->required();
  coding->add_option("--catalog", cdo.catalog, "catalog file (default: built-in)");
  coding->add_option("--ball", cdo.balls, "region as <point JSON>:<radius>, e.g. '[0.5,0.5]:0.1' (repeatable)");
  coding->add_option("--seed", cdo.seed, "master seed");
  coding->add_option("--n-max", cdo.n_max, "largest word length");
  coding->add_option("--pool", cdo.pool, "pool size");
  coding->add_option("--out", cdo.out, "CSV output file");
  coding->callback([&] { action = [&] { return cmd_coding(cdo); }; });

  RecurrenceOpts ro;
  auto* recurrence = app.add_subcommand("recurrence", "first-return profile and wandering certificate");
  recurrence->add_option("--system", ro.system, "catalog system")->required();
  recurrence->add_option("--catalog", ro.catalog, "catalog file (default: built-in)");
  recurrence->add_option("--eps", ro.eps, "return radius");
  recurrence->add_option("--horizons", ro.horizons, "increasing horizons")->delimiter(',');
  recurrence->add_option("--pool", ro.pool, "number of sampled points");
  recurrence->add_option("--seed", ro.seed, "master seed");
  recurrence->add_option("--out", ro.out, "CSV output file");
  recurrence->callback([&] { action = [&] { return cmd_recurrence(ro); }; });

  BorichevOpts bo;
  auto* borichev = app.add_subcommand("borichev", "Liouville skew product: derivative growth and Birkhoff sums");
  borichev->add_option("--system", bo.system, "catalog slow_skew system");
  borichev->add_option("--catalog", bo.catalog, "catalog file (default: built-in)");
  borichev->add_option("--schedule", bo.schedule, "gap schedule q_1 < q_2 < ...")->delimiter(',');
  borichev->add_option("--log10-r", bo.log10_r, "log10 of the analyticity radius, exact decimal");
  borichev->add_flag("--demo", bo.demo, "allow schedules that break the gap condition");
  borichev->add_option("--n-max", bo.n_max, "largest n (>= 1000)");
  borichev->add_option("--grid", bo.grid, "x grid resolution")->check(CLI::PositiveNumber);
  borichev->add_option("--eps", bo.eps_target, "target exponent for max |D_n| <= n^eps");
  borichev->add_option("--out", bo.out, "CSV output file: n, max|D_n|, running sup of Birkhoff sums");
  borichev->callback([&] { action = [&] { return cmd_borichev(bo); }; });

  CoverOpts cvo;
  auto* cover = app.add_subcommand("cover", "explicit linear-size Bowen cover for the north-south skew map");
  cover->add_option("--eps", cvo.eps, "cover radius");
  cover->add_option("--n", cvo.n, "orbit lengths")->delimiter(',');
  cover->add_option("--verify", cvo.verify, "random points to check (0 skips)");
  cover->add_option("--seed", cvo.seed, "seed for the check");
  cover->add_option("--out", cvo.out, "CSV output file");
  cover->callback([&] { action = [&] { return cmd_cover(cvo); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : harness::kExitConfigError;
  }
  try {
    return action();
  } catch (const harness::ParseError& e) {
    std::cerr << "polyent: parse error at " << e.what() << "\n";
    return harness::kExitConfigError;
  } catch (const harness::ConfigError& e) {
    return report_config_error(e);
  } catch (const UsageError& e) {
    return report_config_error(e);
  } catch (const std::invalid_argument& e) {
    return report_config_error(e);
  } catch (const std::exception& e) {
    std::cerr << "polyent: " << e.what() << "\n";
    return 3;
  }
}
