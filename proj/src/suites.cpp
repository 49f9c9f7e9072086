#include <atomic>
#include <chrono>
#include <cstdlib>
#include <future>

#include "photonkit/gauge.hpp"
#include "photonkit/random_fields.hpp"
#include "photonkit/scene.hpp"

namespace photonkit {

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Per-check generator: independent of manifest order and thread count.
PortableRng check_rng(const Scene& scene, const std::string& name) {
  return PortableRng(scene.seed * 0x9e3779b97f4a7c15ull + fnv1a(name));
}

struct CheckSpec {
  std::string suite;
  std::string name;
  std::function<CheckResult(const Scene&, const CorrelationKernel&)> fn;
};

CheckResult make_result(const std::string& name, double residual, double tol, ordered_json values) {
  CheckResult r;
  r.name = name;
  r.values = std::move(values);
  r.residual = residual;
  r.tolerance = tol;
  r.pass = residual < tol;
  return r;
}

const Vec3 kSampleKs[3] = {Vec3{0.4, -0.2, 1.1}, Vec3{-1.0, 0.6, 0.8}, Vec3{0.3, 1.2, -0.5}};


// ---------------------------------------------------------------------------
// state-axioms

CheckResult check_normalization(const Scene& scene, const CorrelationKernel& kernel) {
  const Complex f = correlation(kernel, WeylLabel::vacuum(), WeylLabel::vacuum());
  return make_result("normalization", std::abs(f - Complex{1.0, 0.0}), 1e-15 * scene.tol_scale,
                     {{"value_re", f.real()}, {"value_im", f.imag()}});
}

CheckResult check_hermiticity(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "hermiticity");
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    worst = std::max(worst, std::abs(correlation(kernel, x, y) - std::conj(correlation(kernel, y, x))));
  }
  return make_result("hermiticity", worst, 1e-12 * scene.tol_scale, {{"pairs", 20}});
}

CheckResult check_positivity(const Scene& scene, const CorrelationKernel& kernel) {
  double worst = 0.0, min_eig_seen = 1.0;
  for (int trial = 0; trial < 10; ++trial) {
    auto rng = PortableRng(scene.seed * 0x9e3779b97f4a7c15ull + fnv1a("positivity") + trial);
    std::vector<WeylLabel> labels;
    for (int i = 0; i < 8; ++i) labels.push_back(random_label(rng));
    const auto g = gram_matrix(kernel, labels);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    const double min_eig = es.eigenvalues().minCoeff();
    min_eig_seen = std::min(min_eig_seen, min_eig);
    worst = std::max(worst, std::max(0.0, -min_eig / norm));
  }
  return make_result("positivity", worst, 1e-10 * scene.tol_scale,
                     {{"trials", 10}, {"labels_per_trial", 8}, {"min_eigenvalue", min_eig_seen}});
}

CheckResult check_covariance_shift(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "covariance-relabeling");
  double worst = 0.0, raw_worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    const auto z = random_label(rng);
    const Complex base = correlation(kernel, x, y);
    const Complex moved = correlation(kernel, x + z, y + z);
    raw_worst = std::max(raw_worst, std::abs(moved - base));
    worst = std::max(worst, std::abs(std::abs(moved) - std::abs(base)));
    const FieldEvaluator bx = combined_vector(x, kernel.eta);
    const FieldEvaluator by = combined_vector(y, kernel.eta);
    const FieldEvaluator bz = combined_vector(z, kernel.eta);
    const double drift =
        pseudo_inner(by, bz, kernel.grid).imag() + pseudo_inner(bz, bx, kernel.grid).imag();
    const Complex predicted = base * std::exp(Complex{0.0, -drift / (2.0 * kernel.eta)});
    worst = std::max(worst, std::abs(moved - predicted));
  }
  // The plain relabeling residual is reported raw: the kernel is invariant in
  // modulus, and the phase drift is exactly the group cocycle.
  return make_result("covariance-relabeling", worst, 1e-12 * scene.tol_scale,
                     {{"raw_relabel_residual", raw_worst}});
}

// ---------------------------------------------------------------------------
// weyl-algebra

CheckResult check_weyl_identity(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "weyl-identity");
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
    worst = std::max(worst, weyl_identity_residual(kernel, random_label(rng), random_label(rng)));
  return make_result("weyl-identity", worst, 1e-10 * scene.tol_scale, {{"pairs", 20}});
}

CheckResult check_symplectic_antisymmetry(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "symplectic-antisymmetry");
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    const double sxy = symplectic_form(kernel, x, y);
    const double syx = symplectic_form(kernel, y, x);
    worst = std::max(worst, std::abs(sxy + syx) / std::max(1.0, std::abs(sxy)));
  }
  return make_result("symplectic-antisymmetry", worst, 1e-12 * scene.tol_scale, {{"pairs", 10}});
}

CheckResult check_ccr_calibration(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "ccr-calibration");
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto psi = random_field(rng);
    const auto phi = random_field(rng);
    const double s = symplectic_form(kernel, WeylLabel{FieldEvaluator::zero(), psi},
                                     WeylLabel{FieldEvaluator::zero(), phi});
    const double want = kernel.eta * pseudo_inner(psi, phi, kernel.grid).imag();
    const double scale =
        std::max(1e-300, positive_norm(psi, kernel.grid) * positive_norm(phi, kernel.grid));
    worst = std::max(worst, std::abs(s - want) / scale);
  }
  return make_result("ccr-calibration", worst, 1e-10 * scene.tol_scale,
                     {{"eta", kernel.eta}, {"pairs", 10}});
}

CheckResult check_ladder_commutators(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "ladder-commutators");
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto r = creation_annihilation_ccr_check(kernel, random_field(rng), random_field(rng));
    worst = std::max(worst, r.create_annihilate_residual / r.scale);
    worst = std::max(worst, r.annihilate_annihilate_residual / r.scale);
  }
  return make_result("ladder-commutators", worst, 1e-10 * scene.tol_scale, {{"pairs", 5}});
}

CheckResult check_dual_identification(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "dual-identification");
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto chi = random_field(rng);
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    const Complex lhs = kernel.eta * f_op_matrix_element(kernel, y, chi * I, x);
    const Complex rhs = field_op_matrix_element(kernel, y, chi, x);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return make_result("dual-identification", worst, 1e-10 * scene.tol_scale, {{"trials", 5}});
}

CheckResult check_matrix_element_derivatives(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "matrix-element-derivatives");
  const auto x = random_label(rng);
  const auto y = random_label(rng);
  const auto chi = random_field(rng);
  const double h = 1e-4;
  double worst = 0.0;

  const FieldEvaluator bx = combined_vector(x, kernel.eta);
  const double re = pseudo_inner(chi, bx, kernel.grid).real();
  auto flow_a = [&](double lam) -> Complex {
    const WeylLabel xs{x.a, x.psi + chi * Complex{lam, 0.0}};
    return std::exp(Complex{0.0, -0.5 * lam * re}) * correlation(kernel, xs, y);
  };
  const Complex fd_a = I * (flow_a(h) - flow_a(-h)) / (2.0 * h);
  const Complex closed_a = field_op_matrix_element(kernel, y, chi, x);
  worst = std::max(worst, std::abs(fd_a - closed_a) / std::max(1.0, std::abs(closed_a)));

  const double s0 = symplectic_form(kernel, WeylLabel{chi, FieldEvaluator::zero()}, x);
  auto flow_f = [&](double lam) -> Complex {
    const WeylLabel xs{x.a + chi * Complex{lam, 0.0}, x.psi};
    return std::exp(Complex{0.0, 0.5 * lam * s0}) * correlation(kernel, xs, y);
  };
  const Complex fd_f = I * (flow_f(h) - flow_f(-h)) / (2.0 * h);
  const Complex closed_f = f_op_matrix_element(kernel, y, chi, x);
  worst = std::max(worst, std::abs(fd_f - closed_f) / std::max(1.0, std::abs(closed_f)));

  return make_result("matrix-element-derivatives", worst, 1e-6 * scene.tol_scale, {{"step", h}});
}

// ---------------------------------------------------------------------------
// gauge

CheckResult check_gauge_pairing(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "gauge-invariance-pairing");
  double worst_re = 0.0, worst_im = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto a = random_field(rng);
    const auto c = random_gauge_function(rng);
    const auto psi = random_field(rng);
    const Complex before = pseudo_inner(a, psi, kernel.grid);
    const Complex after = pseudo_inner(apply_gauge(a, c), psi, kernel.grid);
    const double scale =
        std::max(1e-300, positive_norm(a, kernel.grid) * positive_norm(psi, kernel.grid));
    worst_re = std::max(worst_re, std::abs(after.real() - before.real()) / scale);
    worst_im = std::max(worst_im, std::abs(after.imag() - before.imag()) / scale);
  }
  return make_result("gauge-invariance-pairing", std::max(worst_re, worst_im), 1e-10 * scene.tol_scale,
                     {{"re_residual", worst_re}, {"im_residual", worst_im}});
}

CheckResult check_gauge_state(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "gauge-invariance-state");
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    auto x = random_label(rng);
    const auto y = random_label(rng);
    const auto c = random_gauge_function(rng);
    const Complex base = correlation(kernel, x, y);
    x.a = apply_gauge(x.a, c);
    const Complex gauged = correlation(kernel, x, y);
    worst = std::max(worst, std::abs(gauged - base) / std::abs(base));
  }
  return make_result("gauge-invariance-state", worst, 1e-10 * scene.tol_scale, {{"trials", 5}});
}

CheckResult check_radiation_equivalence(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "radiation-equivalence");
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto psi = random_field(rng);
    const auto rep = radiation_gauge_representative(psi);
    const auto report = are_equivalent(psi, rep, kernel.grid, 10, rng.raw(), 1e-10 * scene.tol_scale);
    worst = std::max(worst, report.max_residual / std::max(report.scale, 1e-300));
  }
  return make_result("radiation-equivalence", worst, 1e-10 * scene.tol_scale, {{"trials", 3}});
}

CheckResult check_radiation_idempotence(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "radiation-idempotence");
  const auto psi = random_field(rng);
  const auto rep1 = radiation_gauge_representative(psi);
  const auto rep2 = radiation_gauge_representative(rep1);
  double worst = 0.0, sup_t = 0.0;
  for (const auto& k : kSampleKs) {
    const Vec4c v1 = rep1.eval(k);
    worst = std::max(worst, (rep2.eval(k) - v1).norm() / std::max(1.0, v1.norm()));
    sup_t = std::max(sup_t, std::abs(v1(0)));
  }
  (void)kernel;
  return make_result("radiation-idempotence", worst, 1e-14 * scene.tol_scale,
                     {{"time_component_sup", sup_t}});
}

CheckResult check_longitudinal_collapse(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "longitudinal-collapse");
  ScalarGaussianSum profile;
  profile.terms.push_back({rng.complex_in_box(1.0) + Complex{0.3, 0.0},
                           Vec3{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(1.0, 2.5)},
                           rng.uniform(0.6, 1.0)});
  const auto lng = FieldEvaluator::longitudinal(profile);
  const auto rep = radiation_gauge_representative(lng);
  const double residual = rep.sup_abs(kernel.grid) / std::max(lng.sup_abs(kernel.grid), 1e-300);
  return make_result("longitudinal-collapse", residual, 1e-12 * scene.tol_scale, {});
}

// ---------------------------------------------------------------------------
// fock

CheckResult check_annihilator(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "annihilator-vacuum");
  std::vector<WeylLabel> probes;
  for (int i = 0; i < 8; ++i) probes.push_back(random_label(rng));
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto psi = random_field(rng);
    const double scale = std::max(1e-300, positive_norm(psi, kernel.grid));
    worst = std::max(worst, annihilator_vacuum_residual(kernel, psi, probes) / scale);
  }
  return make_result("annihilator-vacuum", worst, 1e-10 * scene.tol_scale,
                     {{"probes", 8}, {"wavefunctions", 5}});
}

CheckResult check_norm_forms(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "one-photon-norm-forms");
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) worst = std::max(worst, one_photon_norm(kernel, random_field(rng)).form_mismatch);
  return make_result("one-photon-norm-forms", worst, 1e-10 * scene.tol_scale, {{"trials", 10}});
}

CheckResult check_longitudinal_norm(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "longitudinal-zero-norm");
  ScalarGaussianSum profile;
  profile.terms.push_back({rng.complex_in_box(1.0) + Complex{0.5, 0.0},
                           Vec3{rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8), rng.uniform(1.2, 2.2)},
                           rng.uniform(0.6, 0.9)});
  const auto lng = FieldEvaluator::longitudinal(profile);
  const double sup = lng.sup_abs(kernel.grid);
  const double norm = std::abs(one_photon_norm_sq(kernel, lng));
  return make_result("longitudinal-zero-norm", norm / (sup * sup), 1e-10 * scene.tol_scale,
                     {{"norm_sq", norm}});
}

CheckResult check_vacuum_packet_value(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "vacuum-packet-correlation");
  const auto psi = random_packet(rng);
  const Complex f =
      correlation(kernel, WeylLabel{FieldEvaluator::zero(), psi}, WeylLabel::vacuum());
  const double n = pseudo_inner(psi, psi, kernel.grid).real();
  const Complex want{std::exp(-kernel.eta / 4.0 * n), 0.0};
  return make_result("vacuum-packet-correlation", std::abs(f - want), 1e-12 * scene.tol_scale,
                     {{"value_re", f.real()}, {"value_im", f.imag()}, {"norm_sq", n}});
}

// ---------------------------------------------------------------------------
// poincare

CheckResult check_shift_invariance(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "shift-invariance");
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    const SpacetimePoint z{rng.uniform(-1.0, 1.0),
                           {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}};
    const Complex base = correlation(kernel, x, y);
    const Complex moved = correlation(kernel, apply_shift(x, z), apply_shift(y, z));
    worst = std::max(worst, std::abs(moved - base) / std::abs(base));
    const Complex p0 = pseudo_inner(x.a, x.psi, kernel.grid);
    const auto xs = apply_shift(x, z);
    const Complex p1 = pseudo_inner(xs.a, xs.psi, kernel.grid);
    worst = std::max(worst, std::abs(p1 - p0) / std::max(1.0, std::abs(p0)));
  }
  return make_result("shift-invariance", worst, 1e-10 * scene.tol_scale, {{"trials", 5}});
}

CheckResult check_vacuum_generators(const Scene& scene, const CorrelationKernel& kernel) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    worst = std::max(worst,
                     std::abs(generator_K_matrix_element(kernel, WeylLabel::vacuum(), mu, WeylLabel::vacuum())));
  return make_result("vacuum-translation-generators", worst, 1e-15 * scene.tol_scale, {});
}

CheckResult check_rotation_invariance(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "rotation-invariance");
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    const Vec3 axis{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const auto rot = LorentzElement::rotation(axis.norm() > 0.1 ? axis : Vec3{0, 0, 1},
                                              rng.uniform(0.2, 2.8));
    const Complex base = correlation(kernel, x, y);
    const Complex moved = correlation(kernel, apply_lorentz(x, rot), apply_lorentz(y, rot));
    worst = std::max(worst, std::abs(moved - base) / std::abs(base));
  }
  return make_result("rotation-invariance", worst, 1e-6 * scene.tol_scale, {{"trials", 3}});
}

CheckResult check_boost_invariance(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "boost-invariance");
  const double chi = 0.3;
  const auto boost = LorentzElement::boost3(chi);
  CorrelationKernel wide = kernel;
  wide.grid = boosted_grid(kernel.grid, chi);
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    const Complex base = correlation(wide, x, y);
    const Complex moved = correlation(wide, apply_lorentz(x, boost), apply_lorentz(y, boost));
    worst = std::max(worst, std::abs(moved - base) / std::abs(base));
    const Complex p0 = pseudo_inner(x.a, x.psi, wide.grid);
    const auto xb = apply_lorentz(x, boost);
    const Complex p1 = pseudo_inner(xb.a, xb.psi, wide.grid);
    worst = std::max(worst, std::abs(p1 - p0) / std::max(1.0, std::abs(p0)));
  }
  ordered_json values;
  values["chi"] = chi;
  values["grid_resolution"] = wide.grid.resolution;
  return make_result("boost-invariance", worst, 1e-6 * scene.tol_scale, values);
}

CheckResult check_generator_flows(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "generator-flow-consistency");
  const auto x = random_label(rng);
  const auto y = random_label(rng);
  const double h = 1e-4;
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    auto flow = [&](double t) -> Complex {
      SpacetimePoint s{};
      if (mu == 0)
        s.t = t;
      else
        s.x(mu - 1) = t;
      return correlation(kernel, apply_shift(x, s), y);
    };
    const Complex fd = (mu == 0 ? I : -I) * (flow(h) - flow(-h)) / (2.0 * h);
    const Complex closed = generator_K_matrix_element(kernel, y, mu, x);
    worst = std::max(worst, std::abs(closed - fd) / std::max(1.0, std::abs(closed)));
  }
  {
    auto flow = [&](double chi) -> Complex {
      return correlation(kernel, apply_lorentz(x, LorentzElement::rotation(Vec3{0, 0, 1}, chi)), y);
    };
    const Complex fd = I * (flow(h) - flow(-h)) / (2.0 * h);
    const Complex closed = generator_M_matrix_element(kernel, y, 1, 2, x);
    worst = std::max(worst, std::abs(closed - fd) / std::max(1.0, std::abs(closed)));
  }
  {
    auto flow = [&](double chi) -> Complex {
      return correlation(kernel, apply_lorentz(x, LorentzElement::boost3(chi)), y);
    };
    const Complex fd = -I * (flow(h) - flow(-h)) / (2.0 * h);
    const Complex closed = generator_M_matrix_element(kernel, y, 0, 3, x);
    worst = std::max(worst, std::abs(closed - fd) / std::max(1.0, std::abs(closed)));
  }
  return make_result("generator-flow-consistency", worst, 1e-6 * scene.tol_scale, {{"step", h}});
}

CheckResult check_spin_eigenvalues(const Scene& scene, const CorrelationKernel& kernel) {
  (void)kernel;
  const Mat4c s12 = spin_matrix(1, 2);
  Eigen::ComplexEigenSolver<Mat4c> es(s12);
  std::vector<double> evs;
  double imag_worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    evs.push_back(es.eigenvalues()(i).real());
    imag_worst = std::max(imag_worst, std::abs(es.eigenvalues()(i).imag()));
  }
  std::sort(evs.begin(), evs.end());
  const double residual = std::max({imag_worst, std::abs(evs[0] + 1.0), std::abs(evs[1]),
                                    std::abs(evs[2]), std::abs(evs[3] - 1.0)});
  return make_result("spin-eigenvalues", residual, 1e-14 * scene.tol_scale,
                     {{"eigenvalues", evs}});
}

CheckResult check_spin_reassembly(const Scene& scene, const CorrelationKernel& kernel) {
  auto rng = check_rng(scene, "spin-reassembly");
  const auto psi = random_field(rng);
  const auto parts = spin12_decompose(psi);
  double worst = 0.0;
  for (const auto& k : kSampleKs) {
    const Vec4c v = psi.eval(k);
    const Vec4c sum = parts.plus.eval(k) + parts.zero.eval(k) + parts.minus.eval(k);
    worst = std::max(worst, (sum - v).norm() / std::max(1.0, v.norm()));
  }
  const double ortho = std::abs(pseudo_inner(parts.plus, parts.minus, kernel.grid)) /
                       std::max(1e-300, transverse_norm_sq(psi, kernel.grid));
  // two tolerances folded into one ratio: pointwise sum at 1e-12, orthogonality at 1e-10
  const double residual = std::max(worst / 1e-12, ortho / 1e-10);
  return make_result("spin-reassembly", residual, 1.0 * scene.tol_scale,
                     {{"reassembly_residual", worst}, {"orthogonality_residual", ortho}});
}

CheckResult check_spin_fractions(const Scene& scene, const CorrelationKernel& kernel) {
  const auto circ = FieldEvaluator::gaussian_packet(
      Vec3c{Complex{1.0, 0.0} / std::sqrt(2.0), Complex{0.0, -1.0} / std::sqrt(2.0), 0.0},
      Vec3{0.0, 0.0, 3.0}, 0.25);
  const auto nc = spin_part_norms(circ, kernel.grid);
  const double circ_residual = 1.0 - nc.plus / nc.total;
  const auto lin = FieldEvaluator::gaussian_packet(Vec3c{1.0, 0.0, 0.0}, Vec3{0.0, 0.0, 2.0}, 0.5);
  const auto nl = spin_part_norms(lin, kernel.grid);
  const double split_residual = std::abs(nl.plus - nl.minus) / nl.total;
  ordered_json values;
  values["circular_plus_fraction"] = nc.plus / nc.total;
  values["linear_plus_fraction"] = nl.plus / nl.total;
  values["linear_split_residual"] = split_residual;
  const double residual = std::max(circ_residual / 0.01, split_residual / 1e-10);
  return make_result("spin-fractions", residual, 1.0 * scene.tol_scale, values);
}

CheckResult check_dispersion(const Scene& scene, const CorrelationKernel& kernel) {
  const MomentumGrid fine = refined_grid_for_sigma(kernel.grid, 0.15);
  auto expectation = [&](double sigma, int mu) {
    const MomentumGrid& grid = (sigma < 0.45) ? fine : kernel.grid;
    const auto psi = FieldEvaluator::gaussian_packet(Vec3c{1.0, 0.0, 0.0}, Vec3{0.0, 0.0, 2.0}, sigma);
    std::function<double(const Vec3&)> mult;
    if (mu == 0)
      mult = [](const Vec3& k) { return k.norm(); };
    else
      mult = [mu](const Vec3& k) { return k(mu - 1); };
    return pseudo_inner_weighted(psi, psi, grid, mult).real() / pseudo_inner(psi, psi, grid).real();
  };
  const double e0 = expectation(0.15, 0);
  const double e3 = expectation(0.15, 3);
  const double residual = std::max(std::abs(e0 - 2.0), std::abs(e3 - 2.0));
  ordered_json values;
  values["energy_expectation"] = e0;
  values["momentum3_expectation"] = e3;
  values["grid_resolution"] = fine.resolution;
  return make_result("dispersion-limit", residual, 0.01 * scene.tol_scale, values);
}

CheckResult check_polarization(const Scene& scene, const CorrelationKernel& kernel) {
  const auto circ = radiation_gauge_representative(FieldEvaluator::gaussian_packet(
      Vec3c{Complex{1.0, 0.0} / std::sqrt(2.0), Complex{0.0, -1.0} / std::sqrt(2.0), 0.0},
      Vec3{0.0, 0.0, 3.0}, 0.2));
  const auto audit = polarization_audit(circ, kernel.grid);
  ordered_json values;
  values["classification"] = audit.classification;
  values["hplus_angle_residual"] = audit.hplus_angle_residual;
  values["off_axis_fraction"] = audit.off_axis_fraction;
  values["h0_claim_ok"] = audit.h0_claim_ok;
  const double residual = (audit.classification == "H+" && audit.h0_claim_ok) ? 0.0 : 1.0;
  return make_result("polarization-audit", residual, 0.5 * scene.tol_scale, values);
}

// ---------------------------------------------------------------------------

std::vector<CheckSpec> manifest() {
  return {
      {"state-axioms", "normalization", check_normalization},
      {"state-axioms", "hermiticity", check_hermiticity},
      {"state-axioms", "positivity", check_positivity},
      {"state-axioms", "covariance-relabeling", check_covariance_shift},
      {"weyl-algebra", "weyl-identity", check_weyl_identity},
      {"weyl-algebra", "symplectic-antisymmetry", check_symplectic_antisymmetry},
      {"weyl-algebra", "ccr-calibration", check_ccr_calibration},
      {"weyl-algebra", "ladder-commutators", check_ladder_commutators},
      {"weyl-algebra", "dual-identification", check_dual_identification},
      {"weyl-algebra", "matrix-element-derivatives", check_matrix_element_derivatives},
      {"gauge", "gauge-invariance-pairing", check_gauge_pairing},
      {"gauge", "gauge-invariance-state", check_gauge_state},
      {"gauge", "radiation-equivalence", check_radiation_equivalence},
      {"gauge", "radiation-idempotence", check_radiation_idempotence},
      {"gauge", "longitudinal-collapse", check_longitudinal_collapse},
      {"fock", "annihilator-vacuum", check_annihilator},
      {"fock", "one-photon-norm-forms", check_norm_forms},
      {"fock", "longitudinal-zero-norm", check_longitudinal_norm},
      {"fock", "vacuum-packet-correlation", check_vacuum_packet_value},
      {"poincare", "shift-invariance", check_shift_invariance},
      {"poincare", "vacuum-translation-generators", check_vacuum_generators},
      {"poincare", "rotation-invariance", check_rotation_invariance},
      {"poincare", "boost-invariance", check_boost_invariance},
      {"poincare", "generator-flow-consistency", check_generator_flows},
      {"poincare", "spin-eigenvalues", check_spin_eigenvalues},
      {"poincare", "spin-reassembly", check_spin_reassembly},
      {"poincare", "spin-fractions", check_spin_fractions},
      {"poincare", "dispersion-limit", check_dispersion},
      {"poincare", "polarization-audit", check_polarization},
  };
}

int thread_cap() {
  if (const char* env = std::getenv("PHOTONKIT_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return std::min(t, 16);
  }
  return 1;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"state-axioms", "weyl-algebra", "gauge", "fock", "poincare", "all"};
}

Report run_suite(const Scene& scene, const std::string& suite_name) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite_name) == names.end())
    throw SceneError("unknown suite '" + suite_name + "'");

  std::vector<CheckSpec> selected;
  for (auto& spec : manifest())
    if (suite_name == "all" || spec.suite == suite_name) selected.push_back(std::move(spec));

  Report report;
  report.suite = suite_name;
  report.scene_sha256 = scene.sha256;
  report.seed = scene.seed;
  report.eta = scene.eta;
  report.grid = scene.grid;
  report.checks.resize(selected.size());

  const CorrelationKernel kernel = scene.kernel();
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= selected.size()) return;
      const auto start = std::chrono::steady_clock::now();
      CheckResult result;
      try {
        result = selected[i].fn(scene, kernel);
      } catch (const std::exception& e) {
        result.name = selected[i].name;
        result.values["error"] = e.what();
        result.residual = std::numeric_limits<double>::infinity();
        result.tolerance = 0.0;
        result.pass = false;
      }
      result.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      report.checks[i] = std::move(result);
    }
  };
  const int threads = std::min<int>(thread_cap(), static_cast<int>(selected.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::future<void>> futures;
    for (int t = 0; t < threads; ++t) futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
  }
  return report;
}

Report run_correlate(const Scene& scene, const std::string& x_name, const std::string& y_name) {
  const auto& x = scene.label(x_name);
  const auto& y = scene.label(y_name);
  const CorrelationKernel kernel = scene.kernel();
  Report report;
  report.suite = "correlate";
  report.scene_sha256 = scene.sha256;
  report.seed = scene.seed;
  report.eta = scene.eta;
  report.grid = scene.grid;

  const Complex f = correlation(kernel, x, y);
  const double herm = std::abs(f - std::conj(correlation(kernel, y, x)));
  report.checks.push_back(make_result(
      "correlation-value", herm, 1e-12 * scene.tol_scale,
      {{"x", x_name}, {"y", y_name}, {"value_re", f.real()}, {"value_im", f.imag()}}));
  report.checks.push_back(make_result("weyl-identity", weyl_identity_residual(kernel, x, y),
                                      1e-10 * scene.tol_scale, {}));
  report.checks.push_back(
      make_result("symplectic-form", 0.0, 1.0, {{"value", symplectic_form(kernel, x, y)}}));
  return report;
}

Report run_photon(const Scene& scene, const std::string& wf_name, double boost_chi,
                  const SpacetimePoint& shift) {
  FieldEvaluator psi = scene.field(wf_name);
  CorrelationKernel kernel = scene.kernel();
  kernel.grid = refined_grid_for_sigma(boosted_grid(kernel.grid, boost_chi), scene.sigma_min);
  if (boost_chi != 0.0) psi = apply_lorentz(psi, LorentzElement::boost3(boost_chi));
  if (shift.t != 0.0 || shift.x.norm() != 0.0) psi = apply_shift(psi, shift);

  Report report;
  report.suite = "photon";
  report.scene_sha256 = scene.sha256;
  report.seed = scene.seed;
  report.eta = scene.eta;
  report.grid = GridConfig{kernel.grid.k_min, kernel.grid.k_max, kernel.grid.resolution};

  const OnePhotonNorm norm = one_photon_norm(kernel, psi);
  if (norm.value < 1e-10 * std::max(norm.magnitude, 1e-300))
    throw std::runtime_error("degenerate one-photon state");

  report.checks.push_back(make_result("one-photon-norm", norm.form_mismatch, 1e-10 * scene.tol_scale,
                                      {{"norm_sq", norm.value},
                                       {"bilinear_form", norm.bilinear_form},
                                       {"projector_form", norm.projector_form}}));

  ordered_json momenta;
  const double den = pseudo_inner(psi, psi, kernel.grid).real();
  const char* keys[4] = {"energy", "momentum1", "momentum2", "momentum3"};
  for (int mu = 0; mu < 4; ++mu) {
    std::function<double(const Vec3&)> mult;
    if (mu == 0)
      mult = [](const Vec3& k) { return k.norm(); };
    else
      mult = [mu](const Vec3& k) { return k(mu - 1); };
    momenta[keys[mu]] = pseudo_inner_weighted(psi, psi, kernel.grid, mult).real() / den;
  }
  report.checks.push_back(make_result("energy-momentum", 0.0, 1.0, momenta));

  const auto norms = spin_part_norms(psi, kernel.grid);
  report.checks.push_back(make_result("spin-decomposition", 0.0, 1.0,
                                      {{"plus", norms.plus},
                                       {"zero", norms.zero},
                                       {"minus", norms.minus},
                                       {"total", norms.total}}));

  const auto audit = polarization_audit(radiation_gauge_representative(psi), kernel.grid);
  report.checks.push_back(make_result("polarization-audit", audit.h0_claim_ok ? 0.0 : 1.0, 0.5,
                                      {{"classification", audit.classification},
                                       {"hplus_angle_residual", audit.hplus_angle_residual},
                                       {"hminus_angle_residual", audit.hminus_angle_residual},
                                       {"k3_psi3_residual", audit.k3_psi3_residual},
                                       {"off_axis_fraction", audit.off_axis_fraction},
                                       {"h0_claim_ok", audit.h0_claim_ok}}));
  return report;
}

Report run_gauge_report(const Scene& scene, const std::string& wf_name) {
  const FieldEvaluator& psi = scene.field(wf_name);
  const CorrelationKernel kernel = scene.kernel();
  const FieldEvaluator rep = radiation_gauge_representative(psi);

  Report report;
  report.suite = "gauge";
  report.scene_sha256 = scene.sha256;
  report.seed = scene.seed;
  report.eta = scene.eta;
  report.grid = scene.grid;

  ordered_json samples = ordered_json::array();
  for (const auto& k : kSampleKs) {
    const Vec4c v = rep.eval(k);
    samples.push_back({{"k", {k(0), k(1), k(2)}},
                       {"value", {{v(0).real(), v(0).imag()},
                                  {v(1).real(), v(1).imag()},
                                  {v(2).real(), v(2).imag()},
                                  {v(3).real(), v(3).imag()}}}});
  }
  report.checks.push_back(make_result("representative-values", 0.0, 1.0,
                                      {{"sup_abs", rep.sup_abs(kernel.grid)}, {"samples", samples}}));

  const auto equiv = are_equivalent(psi, rep, kernel.grid, 16, scene.seed, 1e-10 * scene.tol_scale);
  report.checks.push_back(make_result("equivalence",
                                      equiv.max_residual / std::max(equiv.scale, 1e-300),
                                      1e-10 * scene.tol_scale, {{"trials", 16}}));

  const auto rep2 = radiation_gauge_representative(rep);
  double idem = 0.0;
  for (const auto& k : kSampleKs) {
    const Vec4c v1 = rep.eval(k);
    idem = std::max(idem, (rep2.eval(k) - v1).norm() / std::max(1.0, v1.norm()));
  }
  report.checks.push_back(make_result("idempotence", idem, 1e-14 * scene.tol_scale, {}));
  return report;
}

Report run_gram(const Scene& scene, const std::vector<std::string>& label_names) {
  std::vector<std::string> names = label_names;
  if (names.empty())
    for (const auto& [name, label] : scene.labels) names.push_back(name);
  if (names.empty()) throw SceneError("gram: no labels in the scene");
  std::vector<WeylLabel> labels;
  for (const auto& n : names) labels.push_back(scene.label(n));

  const CorrelationKernel kernel = scene.kernel();
  Report report;
  report.suite = "gram";
  report.scene_sha256 = scene.sha256;
  report.seed = scene.seed;
  report.eta = scene.eta;
  report.grid = scene.grid;

  const auto g = gram_matrix(kernel, labels);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  const double min_eig = es.eigenvalues().minCoeff();

  ordered_json entries = ordered_json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back({g(i, j).real(), g(i, j).imag()});
    entries.push_back(row);
  }
  report.checks.push_back(make_result("gram-positivity", std::max(0.0, -min_eig / norm),
                                      1e-10 * scene.tol_scale,
                                      {{"labels", names},
                                       {"matrix", entries},
                                       {"min_eigenvalue", min_eig},
                                       {"spectral_norm", norm}}));
  return report;
}

}  // namespace photonkit
