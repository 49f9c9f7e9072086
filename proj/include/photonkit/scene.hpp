#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "photonkit/poincare.hpp"

namespace photonkit {

struct GridConfig {
  double k_min = 1e-3;
  double k_max = 10.0;
  std::array<int, 3> resolution{32, 16, 32};
};

// Parsed scene: named fields, test functions and Weyl labels, plus the grid
// and seed that make every derived report reproducible.
struct Scene {
  int version = 1;
  std::uint64_t seed = 0;
  double eta = 2.0;
  double tol_scale = 1.0;
  GridConfig grid;
  std::map<std::string, FieldEvaluator> fields;
  std::map<std::string, TestFunction4D> testfunctions;
  std::map<std::string, WeylLabel> labels;
  std::vector<std::string> checks{"all"};
  std::string sha256;
  double sigma_min = 10.0;  // narrowest packet width seen, drives refinement
  std::vector<std::string> warnings;

  MomentumGrid build() const { return build_grid(grid.k_min, grid.k_max, grid.resolution); }
  CorrelationKernel kernel() const;
  const FieldEvaluator& field(const std::string& name) const;
  const WeylLabel& label(const std::string& name) const;
};

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scene parse_scene(const std::string& json_text);
Scene load_scene_file(const std::string& path);

std::string sha256_hex(const std::string& bytes);

struct CheckResult {
  std::string name;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_ms = 0.0;  // stderr diagnostics only, never serialized
};

struct Report {
  std::string suite;
  std::string scene_sha256;
  std::uint64_t seed = 0;
  double eta = 2.0;
  GridConfig grid;
  std::vector<CheckResult> checks;

  bool pass() const;
  // Deterministic serialization: fixed key order, shortest-round-trip floats,
  // no volatile fields.
  nlohmann::ordered_json to_json() const;
};

// Named suites: state-axioms, weyl-algebra, gauge, fock, poincare, all.
Report run_suite(const Scene& scene, const std::string& suite_name);
std::vector<std::string> suite_names();

Report run_correlate(const Scene& scene, const std::string& x, const std::string& y);
Report run_photon(const Scene& scene, const std::string& wavefunction, double boost_chi,
                  const SpacetimePoint& shift);
Report run_gauge_report(const Scene& scene, const std::string& wavefunction);
Report run_gram(const Scene& scene, const std::vector<std::string>& label_names);

}  // namespace photonkit
