#pragma once

// Named systems with their estimator settings, cohomology data and expected
// values. The catalog is a JSON document; one ships inside the library.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyent/cohomology/growth.hpp"
#include "polyent/harness/matrix_input.hpp"
#include "polyent/lab/separation.hpp"
#include "polyent/slow_growth/liouville.hpp"
#include "polyent/zoo/system.hpp"

namespace polyent::harness {

// Carries every problem found, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct ExcludedBall {
  zoo::Point center;   // chart coordinates
  double radius = 0.0;
};

struct EstimatorSpec {
  std::vector<double> eps{0.2, 0.1, 0.05};
  std::vector<std::size_t> n_schedule;
  std::size_t pool = 10000;
  zoo::SamplerSpec sampler;
  // Restricted estimate: initial points farther than radius from every center.
  std::vector<ExcludedBall> excluded;

  lab::BowenParams params(const zoo::DynSystem& s, std::uint64_t seed, unsigned workers) const;
};

struct CohomologyData {
  MatrixInput action;   // lone matrix = action on H^{1,1}
  std::size_t k = 1;
  std::size_t b2 = 1;
};

struct CatalogSystem {
  std::string name;
  std::string family;   // torus, projective, skew, slow_skew
  std::string description;
  std::optional<zoo::DynSystem> system;
  std::optional<slow_growth::SlowSkew> slow;   // slow_skew entries
  std::optional<CohomologyData> cohomology;
  std::optional<double> declared_hpol;
  double tolerance = 0.35;
  std::optional<EstimatorSpec> estimator;
  bool isometric = false;

  const zoo::DynSystem& dyn() const { return *system; }
};

struct Catalog {
  std::vector<CatalogSystem> systems;
  const CatalogSystem* find(const std::string& name) const;
  const CatalogSystem& at(const std::string& name) const;   // throws ConfigError
  std::vector<std::string> names() const;
};

// `origin` prefixes error messages (a file name, or "built-in catalog").
Catalog parse_catalog(const std::string& json_text, const std::string& origin = "catalog");
Catalog load_catalog(const std::filesystem::path& path);

const std::string& builtin_catalog_text();
const Catalog& builtin_catalog();

struct Prediction {
  std::optional<double> value;
  // "torus Jordan blocks", "pgl2 classifier", "pgl3 classifier", "catalog", or why there is none.
  std::string source;
  bool infinite = false;   // positive topological entropy
};

// Square matrix whose entries are numbers, [re, im] pairs or {"turns": t, "modulus": m}.
Eigen::MatrixXcd parse_complex_matrix(const std::string& json_text);
// Real chart coordinates, or homogeneous complex coordinates on projective spaces.
zoo::Point parse_chart_point(const zoo::DynSystem& s, const std::string& json_text);

Prediction predicted_hpol(const CatalogSystem& s);
// Minimum of the cohomological bounds, when cohomology data is attached.
std::optional<long> cohomology_upper_bound(const CatalogSystem& s);

}  // namespace polyent::harness
