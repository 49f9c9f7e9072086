#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "photonkit/random_fields.hpp"
#include "photonkit/vacuum.hpp"
#include "support/oracles.hpp"

using namespace photonkit;

namespace {
CorrelationKernel make_kernel(double eta = 2.0) {
  return CorrelationKernel{eta, build_grid(1e-3, 10.0, {32, 16, 32}), Tolerances{}};
}

FieldEvaluator transverse_packet() {
  return FieldEvaluator::gaussian_packet(Vec3c{1.0, 0.0, 0.0}, Vec3{0.0, 0.0, 2.0}, 0.5);
}

FieldEvaluator longitudinal_field() {
  return FieldEvaluator::longitudinal(ScalarGaussianSum::constant_bump({0.9, -0.2}, Vec3{0.3, 0.1, 1.7}, 0.8));
}

WeylLabel label_psi(const FieldEvaluator& psi) { return WeylLabel{FieldEvaluator::zero(), psi}; }
}  // namespace

TEST_CASE("combined vector") {
  const auto psi = transverse_packet();
  const Vec3 k{0.4, -0.1, 1.9};
  SUBCASE("vacuum label combines to zero") {
    CHECK(combined_vector(WeylLabel::vacuum(), 2.0).is_zero());
  }
  SUBCASE("(a, 0) combines to a") {
    const WeylLabel x{psi, FieldEvaluator::zero()};
    CHECK((combined_vector(x, 2.0).eval(k) - psi.eval(k)).norm() == 0.0);
  }
  SUBCASE("(0, psi) at eta = 2 combines to 2i psi") {
    const Vec4c got = combined_vector(label_psi(psi), 2.0).eval(k);
    CHECK((got - Complex{0.0, 2.0} * psi.eval(k)).norm() < 1e-16);
  }
}

TEST_CASE("correlation functional") {
  const auto kernel = make_kernel();
  SUBCASE("normalization at the neutral element is exact") {
    const Complex f = correlation(kernel, WeylLabel::vacuum(), WeylLabel::vacuum());
    CHECK(f == Complex{1.0, 0.0});
  }
  SUBCASE("diagonal is exactly one for any label") {
    PortableRng rng(3);
    for (int i = 0; i < 4; ++i) {
      const auto x = random_label(rng);
      CHECK(correlation(kernel, x, x) == Complex{1.0, 0.0});
    }
  }
  SUBCASE("one-sided packet label matches the closed exponential") {
    const auto psi = transverse_packet();
    const Complex f = correlation(kernel, label_psi(psi), WeylLabel::vacuum());
    const double norm = pseudo_inner(psi, psi, kernel.grid).real();
    CHECK(std::abs(f - std::exp(-kernel.eta / 4.0 * norm)) < 1e-13);
  }
  SUBCASE("hermiticity under argument swap") {
    PortableRng rng(5);
    for (int i = 0; i < 20; ++i) {
      const auto x = random_label(rng);
      const auto y = random_label(rng);
      const Complex fxy = correlation(kernel, x, y);
      const Complex fyx = correlation(kernel, y, x);
      CHECK(std::abs(fxy - std::conj(fyx)) < 1e-12);
    }
  }
  SUBCASE("broken constraint surfaces as a negative-norm error") {
    std::array<ScalarGaussianSum, 4> comps;
    comps[0] = ScalarGaussianSum::constant_bump({1.0, 0.0}, Vec3{0.0, 0.0, 2.0}, 0.6);
    const auto bad = FieldEvaluator::raw_components(comps);
    CHECK_THROWS_WITH_AS((void)correlation(kernel, label_psi(bad), WeylLabel::vacuum()),
                         "negative norm: difference vector has negative pairing", std::runtime_error);
  }
  SUBCASE("modulus and cocycle phase under simultaneous relabeling") {
    PortableRng rng(7);
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    const auto z = random_label(rng);
    const Complex base = correlation(kernel, x, y);
    const Complex shifted = correlation(kernel, x + z, y + z);
    CHECK(std::abs(std::abs(shifted) - std::abs(base)) < 1e-12);
    // phase drift is exactly the cocycle of the relabeling
    const FieldEvaluator bx = combined_vector(x, kernel.eta);
    const FieldEvaluator by = combined_vector(y, kernel.eta);
    const FieldEvaluator bz = combined_vector(z, kernel.eta);
    const double drift = pseudo_inner(by, bz, kernel.grid).imag() + pseudo_inner(bz, bx, kernel.grid).imag();
    const Complex predicted = base * std::exp(Complex{0.0, -drift / (2.0 * kernel.eta)});
    CHECK(std::abs(shifted - predicted) < 1e-12);
  }
}

TEST_CASE("symplectic form") {
  const auto kernel = make_kernel();
  PortableRng rng(9);
  const auto x = random_label(rng);
  const auto y = random_label(rng);
  SUBCASE("vanishes on the diagonal") { CHECK(symplectic_form(kernel, x, x) == 0.0); }
  SUBCASE("antisymmetric") {
    const double sxy = symplectic_form(kernel, x, y);
    const double syx = symplectic_form(kernel, y, x);
    CHECK(std::abs(sxy + syx) < 1e-12 * std::max(1.0, std::abs(sxy)));
  }
  SUBCASE("wave-function-only labels reduce to eta Im<psi|phi>") {
    const auto psi = transverse_packet();
    const auto phi = FieldEvaluator::gaussian_packet(Vec3c{0.3, Complex{0.0, 1.0}, 0.2}, Vec3{0.5, 0.2, 1.5}, 0.7);
    const double s = symplectic_form(kernel, label_psi(psi), label_psi(phi));
    const double want = kernel.eta * pseudo_inner(psi, phi, kernel.grid).imag();
    CHECK(std::abs(s - want) < 1e-12 * std::max(1.0, std::abs(want)));
  }
  SUBCASE("same reduction at a generic eta") {
    const auto kernel17 = make_kernel(1.7);
    const auto psi = transverse_packet();
    const auto phi = FieldEvaluator::gaussian_packet(Vec3c{0.0, 1.0, 0.4}, Vec3{0.0, 0.3, 1.8}, 0.6);
    const double s = symplectic_form(kernel17, label_psi(psi), label_psi(phi));
    const double want = 1.7 * pseudo_inner(psi, phi, kernel17.grid).imag();
    CHECK(std::abs(s - want) < 1e-12 * std::max(1.0, std::abs(want)));
  }
  SUBCASE("real-bilinear in real scalings") {
    const double s = symplectic_form(kernel, x, y);
    const double s2 = symplectic_form(kernel, x * Complex{2.0, 0.0}, y * Complex{3.0, 0.0});
    CHECK(std::abs(s2 - 6.0 * s) < 1e-12 * std::max(1.0, std::abs(s2)));
  }
}

TEST_CASE("weyl multiplication identity") {
  const auto kernel = make_kernel();
  PortableRng rng(11);
  SUBCASE("diagonal residual is zero") {
    const auto x = random_label(rng);
    CHECK(weyl_identity_residual(kernel, x, x) < 1e-15);
  }
  SUBCASE("random labels") {
    for (int i = 0; i < 20; ++i) {
      const auto x = random_label(rng);
      const auto y = random_label(rng);
      CHECK(weyl_identity_residual(kernel, x, y) < 1e-10);
    }
  }
  SUBCASE("scaled labels") {
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    CHECK(weyl_identity_residual(kernel, x * Complex{2.0, 0.0}, y * Complex{2.0, 0.0}) < 1e-10);
  }
  SUBCASE("holds at a generic eta as well") {
    const auto kernel17 = make_kernel(1.7);
    const auto x = random_label(rng);
    const auto y = random_label(rng);
    CHECK(weyl_identity_residual(kernel17, x, y) < 1e-10);
  }
}

TEST_CASE("gram matrices") {
  const auto kernel = make_kernel();
  SUBCASE("single vacuum label") {
    const WeylLabel labels[1] = {WeylLabel::vacuum()};
    const auto g = gram_matrix(kernel, labels);
    CHECK(g.rows() == 1);
    CHECK(std::abs(g(0, 0) - Complex{1.0, 0.0}) == 0.0);
  }
  SUBCASE("two identical labels give the rank-one matrix") {
    PortableRng rng(13);
    const auto x = random_label(rng);
    const WeylLabel labels[2] = {x, x};
    const auto g = gram_matrix(kernel, labels);
    CHECK(std::abs(g(0, 1) - Complex{1.0, 0.0}) < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    CHECK(std::abs(es.eigenvalues()(0)) < 1e-14);
    CHECK(std::abs(es.eigenvalues()(1) - 2.0) < 1e-14);
  }
  SUBCASE("eight random labels stay positive semidefinite") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      PortableRng rng(seed);
      std::vector<WeylLabel> labels;
      for (int i = 0; i < 8; ++i) labels.push_back(random_label(rng));
      const auto g = gram_matrix(kernel, labels);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
      const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
      CHECK(es.eigenvalues().minCoeff() >= -1e-10 * norm);
    }
  }
  SUBCASE("a constraint-breaking label trips the positivity guard") {
    std::array<ScalarGaussianSum, 4> comps;
    comps[0] = ScalarGaussianSum::constant_bump({1.5, 0.0}, Vec3{0.0, 0.0, 2.0}, 0.6);
    const auto bad = FieldEvaluator::raw_components(comps);
    const WeylLabel labels[2] = {WeylLabel::vacuum(), WeylLabel{FieldEvaluator::zero(), bad}};
    CHECK_THROWS_AS((void)gram_matrix(kernel, labels), std::runtime_error);
  }
  SUBCASE("label count limits") {
    CHECK_THROWS_AS((void)gram_matrix(kernel, std::span<const WeylLabel>{}), std::invalid_argument);
  }
}

TEST_CASE("field operator matrix elements") {
  const auto kernel = make_kernel();
  PortableRng rng(17);
  const auto x = random_label(rng);
  const auto y = random_label(rng);
  const auto chi = random_field(rng);
  SUBCASE("vacuum expectation vanishes") {
    CHECK(std::abs(field_op_matrix_element(kernel, WeylLabel::vacuum(), chi, WeylLabel::vacuum())) == 0.0);
  }
  SUBCASE("one-sided specialization") {
    const Complex got = field_op_matrix_element(kernel, y, chi, WeylLabel::vacuum());
    const FieldEvaluator by = combined_vector(y, kernel.eta);
    const Complex want =
        0.5 * pseudo_inner(chi, by, kernel.grid) * correlation(kernel, WeylLabel::vacuum(), y);
    CHECK(std::abs(got - want) < 1e-14 * std::max(1.0, std::abs(want)));
  }
  SUBCASE("finite-difference cross-check of the derivation") {
    const FieldEvaluator bx = combined_vector(x, kernel.eta);
    const double re = pseudo_inner(chi, bx, kernel.grid).real();
    auto g = [&](double lam) -> Complex {
      const WeylLabel xs{x.a, x.psi + chi * Complex{lam, 0.0}};
      return std::exp(Complex{0.0, -0.5 * lam * re}) * correlation(kernel, xs, y);
    };
    const Complex fd = I * oracles::central_diff_c(g, 1e-4);
    const Complex closed = field_op_matrix_element(kernel, y, chi, x);
    CHECK(std::abs(fd - closed) < 1e-6 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("dual generator matrix elements") {
  const auto kernel = make_kernel();
  PortableRng rng(19);
  const auto x = random_label(rng);
  const auto y = random_label(rng);
  const auto d = random_field(rng);
  SUBCASE("vacuum expectation vanishes") {
    CHECK(std::abs(f_op_matrix_element(kernel, WeylLabel::vacuum(), d, WeylLabel::vacuum())) == 0.0);
  }
  SUBCASE("eta F(i chi) equals A(chi) between arbitrary labels") {
    for (int i = 0; i < 5; ++i) {
      const auto chi = random_field(rng);
      const auto xl = random_label(rng);
      const auto yl = random_label(rng);
      const Complex lhs = kernel.eta * f_op_matrix_element(kernel, yl, chi * I, xl);
      const Complex rhs = field_op_matrix_element(kernel, yl, chi, xl);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
  SUBCASE("finite-difference cross-check along the dual direction") {
    const double s0 = symplectic_form(kernel, WeylLabel{d, FieldEvaluator::zero()}, x);
    auto g = [&](double lam) -> Complex {
      const WeylLabel xs{x.a + d * Complex{lam, 0.0}, x.psi};
      return std::exp(Complex{0.0, 0.5 * lam * s0}) * correlation(kernel, xs, y);
    };
    const Complex fd = I * oracles::central_diff_c(g, 1e-4);
    const Complex closed = f_op_matrix_element(kernel, y, d, x);
    CHECK(std::abs(fd - closed) < 1e-6 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("annihilation structure of the vacuum") {
  const auto kernel = make_kernel();
  PortableRng rng(23);
  std::vector<WeylLabel> probes;
  for (int i = 0; i < 8; ++i) probes.push_back(random_label(rng));
  SUBCASE("zero wave function") {
    CHECK(annihilator_vacuum_residual(kernel, FieldEvaluator::zero(), probes) == 0.0);
  }
  SUBCASE("transverse packet") {
    const auto psi = transverse_packet();
    const double scale = positive_norm(psi, kernel.grid);
    CHECK(annihilator_vacuum_residual(kernel, psi, probes) < 1e-10 * scale);
  }
  SUBCASE("longitudinal direction annihilates trivially") {
    const auto lng = longitudinal_field();
    CHECK(annihilator_vacuum_residual(kernel, lng, probes) < 1e-12);
  }
}

TEST_CASE("one-photon norms") {
  const auto kernel = make_kernel();
  SUBCASE("zero field") { CHECK(one_photon_norm_sq(kernel, FieldEvaluator::zero()) == 0.0); }
  SUBCASE("longitudinal family has zero norm") {
    const auto lng = longitudinal_field();
    const double msq = lng.sup_abs(kernel.grid);
    CHECK(std::abs(one_photon_norm_sq(kernel, lng)) < 1e-10 * msq * msq);
  }
  SUBCASE("both routes agree on random fields") {
    PortableRng rng(29);
    for (int i = 0; i < 10; ++i) {
      const auto n = one_photon_norm(kernel, random_field(rng));
      CHECK(n.form_mismatch < 1e-10);
      CHECK(n.value >= -1e-12);
    }
  }
  SUBCASE("origin-centered packet matches the radial oracle") {
    const double sigma = 1.0;
    const auto psi = FieldEvaluator::gaussian_packet(Vec3c{1.0, 0.0, 0.0}, Vec3::Zero(), sigma);
    const double got = one_photon_norm_sq(kernel, psi);
    // isotropic reduction: (η/2)·(8π/3)·(1/2)·∫ r e^{−r²/σ²} dr over the shell
    const double radial = oracles::radial(
        [sigma](double r) { return r * std::exp(-r * r / (sigma * sigma)); }, kernel.grid.k_min,
        kernel.grid.k_max);
    const double want = 0.5 * kernel.eta * (8.0 * M_PI / 3.0) * 0.5 * radial;
    CHECK(oracles::rel_err(got, want) < 1e-8);
  }
  SUBCASE("time-only fixture trips the form-mismatch guard") {
    std::array<ScalarGaussianSum, 4> comps;
    comps[0] = ScalarGaussianSum::constant_bump({1.0, 0.0}, Vec3{0.0, 0.0, 2.0}, 0.6);
    const auto bad = FieldEvaluator::raw_components(comps);
    CHECK_THROWS_WITH_AS((void)one_photon_norm_sq(kernel, bad),
                         "form mismatch: one-photon norm routes disagree", std::runtime_error);
  }
}

TEST_CASE("ladder commutators from symplectic data") {
  const auto kernel = make_kernel();
  SUBCASE("both zero") {
    const auto r = creation_annihilation_ccr_check(kernel, FieldEvaluator::zero(), FieldEvaluator::zero());
    CHECK(r.create_annihilate_residual == 0.0);
    CHECK(r.annihilate_annihilate_residual == 0.0);
  }
  SUBCASE("equal transverse packets reproduce the norm") {
    const auto psi = transverse_packet();
    const auto r = creation_annihilation_ccr_check(kernel, psi, psi);
    const double norm = one_photon_norm_sq(kernel, psi);
    CHECK(std::abs(r.create_annihilate_lhs - Complex{-norm, 0.0}) < 1e-12 * norm);
    CHECK(r.create_annihilate_residual < 1e-10 * r.scale);
  }
  SUBCASE("random pairs") {
    PortableRng rng(31);
    for (int i = 0; i < 5; ++i) {
      const auto r = creation_annihilation_ccr_check(kernel, random_field(rng), random_field(rng));
      CHECK(r.create_annihilate_residual < 1e-10 * r.scale);
      CHECK(r.annihilate_annihilate_residual < 1e-12 * r.scale);
    }
  }
}
