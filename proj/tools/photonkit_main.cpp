#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "photonkit/scene.hpp"
#include "photonkit/version.hpp"

namespace {

using photonkit::Report;
using photonkit::Scene;
using photonkit::SceneError;

struct CommonOpts {
  std::string scene_path;
  std::string out_path;
  double kmin = -1.0, kmax = -1.0;
  std::string grid_spec;
  std::int64_t seed = -1;
  double tol_scale = -1.0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool scene_required) {
  auto* scene_opt = cmd->add_option("--scene", opts.scene_path, "scene file (JSON)");
  if (scene_required) scene_opt->required();
  cmd->add_option("--out", opts.out_path, "also write the report to this file");
  cmd->add_option("--kmin", opts.kmin, "override the radial cutoff k_min");
  cmd->add_option("--kmax", opts.kmax, "override the radial cutoff k_max");
  cmd->add_option("--grid", opts.grid_spec, "override the resolution as NR,NT,NP");
  cmd->add_option("--seed", opts.seed, "override the scene seed");
  cmd->add_option("--tol-scale", opts.tol_scale, "multiply all tolerances (coarse-grid smoke runs)");
}

Scene load(const CommonOpts& opts) {
  Scene scene;
  if (!opts.scene_path.empty()) {
    scene = photonkit::load_scene_file(opts.scene_path);
  } else {
    scene = photonkit::parse_scene("{\"seed\": 0}");
  }
  if (opts.kmin > 0.0) scene.grid.k_min = opts.kmin;
  if (opts.kmax > 0.0) scene.grid.k_max = opts.kmax;
  if (!opts.grid_spec.empty()) {
    std::array<int, 3> res;
    if (std::sscanf(opts.grid_spec.c_str(), "%d,%d,%d", &res[0], &res[1], &res[2]) != 3)
      throw SceneError("--grid expects NR,NT,NP");
    scene.grid.resolution = res;
  }
  if (opts.seed >= 0) scene.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.tol_scale > 0.0) scene.tol_scale = opts.tol_scale;
  for (const auto& w : scene.warnings) std::cerr << "warning: " << w << "\n";
  return scene;
}

int emit(const Report& report, const CommonOpts& opts) {
  for (const auto& c : report.checks)
    std::cerr << (c.pass ? "  pass  " : "  FAIL  ") << c.name << "  (residual " << c.residual
              << ", tol " << c.tolerance << ", " << c.wall_ms << " ms)\n";
  const std::string text = report.to_json().dump(2) + "\n";
  std::cout << text;
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw SceneError("cannot write report to '" + opts.out_path + "'");
    out << text;
  }
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photonkit: momentum-space photon field toolkit"};
  app.set_version_flag("--version", std::string("photonkit ") + photonkit::kVersion);
  app.require_subcommand(1);

  CommonOpts check_opts;
  std::string suite = "all";
  auto* check = app.add_subcommand("check", "run an invariant suite");
  check->add_option("suite", suite, "one of: state-axioms, weyl-algebra, gauge, fock, poincare, all");
  add_common(check, check_opts, false);

  CommonOpts corr_opts;
  std::string label_x, label_y;
  auto* corr = app.add_subcommand("correlate", "evaluate the correlation of two labels");
  corr->add_option("x", label_x, "label name")->required();
  corr->add_option("y", label_y, "label name")->required();
  add_common(corr, corr_opts, true);

  CommonOpts photon_opts;
  std::string wavefunction;
  double boost_chi = 0.0;
  std::string shift_spec;
  auto* photon = app.add_subcommand("photon", "one-photon observables of a wave function");
  photon->add_option("wavefunction", wavefunction, "field name")->required();
  photon->add_option("--boost", boost_chi, "apply a boost of this rapidity along the third axis first");
  photon->add_option("--shift", shift_spec, "apply a spacetime shift x0,x1,x2,x3 first");
  add_common(photon, photon_opts, true);

  CommonOpts gauge_opts;
  std::string gauge_field;
  auto* gauge = app.add_subcommand("gauge", "radiation-gauge representative report");
  gauge->add_option("wavefunction", gauge_field, "field name")->required();
  add_common(gauge, gauge_opts, true);

  CommonOpts gram_opts;
  std::vector<std::string> gram_labels;
  auto* gram = app.add_subcommand("gram", "Gram matrix of Weyl labels");
  gram->add_option("labels", gram_labels, "label names (defaults to every scene label)");
  add_common(gram, gram_opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      const Scene scene = load(check_opts);
      return emit(photonkit::run_suite(scene, suite), check_opts);
    }
    if (corr->parsed()) {
      const Scene scene = load(corr_opts);
      return emit(photonkit::run_correlate(scene, label_x, label_y), corr_opts);
    }
    if (photon->parsed()) {
      const Scene scene = load(photon_opts);
      photonkit::SpacetimePoint shift{};
      if (!shift_spec.empty()) {
        double v[4];
        if (std::sscanf(shift_spec.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4)
          throw SceneError("--shift expects x0,x1,x2,x3");
        shift = photonkit::SpacetimePoint{v[0], {v[1], v[2], v[3]}};
      }
      return emit(photonkit::run_photon(scene, wavefunction, boost_chi, shift), photon_opts);
    }
    if (gauge->parsed()) {
      const Scene scene = load(gauge_opts);
      return emit(photonkit::run_gauge_report(scene, gauge_field), gauge_opts);
    }
    if (gram->parsed()) {
      const Scene scene = load(gram_opts);
      return emit(photonkit::run_gram(scene, gram_labels), gram_opts);
    }
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
