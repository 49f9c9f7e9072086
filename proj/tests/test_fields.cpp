#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "photonkit/fields.hpp"
#include "photonkit/poincare.hpp"
#include "photonkit/random_fields.hpp"
#include "support/oracles.hpp"

using namespace photonkit;

namespace {
const MomentumGrid& default_grid() {
  static const MomentumGrid g = build_grid(1e-3, 10.0, {32, 16, 32});
  return g;
}

FieldEvaluator transverse_packet() {
  return FieldEvaluator::gaussian_packet(Vec3c{1.0, 0.0, 0.0}, Vec3{0.0, 0.0, 2.0}, 0.5);
}
}  // namespace

TEST_CASE("constraint completion") {
  SUBCASE("zero spatial data gives zero time component") {
    const auto f = complete_lorenz([](const Vec3&) { return Vec3c::Zero().eval(); });
    CHECK(f.eval(Vec3{1.0, 0.5, -0.2}).norm() == 0.0);
  }
  SUBCASE("pure longitudinal data reproduces the scalar profile in the time slot") {
    const auto prof = ScalarGaussianSum::constant_bump({0.8, 0.3}, Vec3{0.0, 0.0, 1.5}, 0.7);
    const auto f = FieldEvaluator::longitudinal(prof);
    const Vec3 k{0.4, -0.2, 1.1};
    CHECK(std::abs(f.eval(k)(0) - prof.eval(k)) < 1e-15);
  }
  SUBCASE("hand value for the packet eps=(1,0,0), k0=(0,0,2), sigma=0.5") {
    const auto psi = transverse_packet();
    const Vec3 k{1.0, 0.0, 2.0};
    const Complex t = psi.eval(k)(0);
    CHECK(std::abs(t - std::exp(-2.0) / std::sqrt(5.0)) < 1e-15);
  }
  SUBCASE("k = 0 is rejected") {
    const auto psi = transverse_packet();
    CHECK_THROWS_AS(psi.eval(Vec3::Zero()), std::domain_error);
  }
}

TEST_CASE("constraint residual is machine-zero for every constructor") {
  PortableRng rng(11);
  const auto& grid = default_grid();
  const double tol = 1e-13;
  for (int i = 0; i < 3; ++i) {
    const auto f = random_field(rng);
    const double scale = f.sup_abs(grid) * grid.k_max;
    CHECK(lorenz_residual(f, grid) < tol * std::max(scale, 1.0));
  }
  const auto shifted = apply_shift(random_packet(rng), SpacetimePoint{0.4, {0.1, -0.7, 0.2}});
  CHECK(lorenz_residual(shifted, grid) < tol * shifted.sup_abs(grid) * grid.k_max);
}

TEST_CASE("pseudo inner product") {
  const auto& grid = default_grid();
  SUBCASE("against the zero field") {
    CHECK(pseudo_inner(transverse_packet(), FieldEvaluator::zero(), grid) == Complex{0.0, 0.0});
  }
  SUBCASE("transverse packet: positive and equal to the projector form") {
    const auto psi = transverse_packet();
    const Complex v = pseudo_inner(psi, psi, grid);
    CHECK(v.real() > 0.0);
    CHECK(std::abs(v.imag()) < 1e-14 * v.real());
    const double proj = transverse_norm_sq(psi, grid);
    CHECK(std::abs(v.real() - proj) < 1e-10 * proj);
  }
  SUBCASE("degeneracy along the longitudinal family") {
    PortableRng rng(5);
    const auto prof = ScalarGaussianSum::constant_bump({1.0, -0.4}, Vec3{0.5, 0.0, 1.8}, 0.8);
    const auto lng = FieldEvaluator::longitudinal(prof);
    for (int i = 0; i < 10; ++i) {
      const auto a = random_field(rng);
      const double scale = positive_norm(a, grid) * (1.0 + positive_norm(lng, grid));
      CHECK(std::abs(pseudo_inner(a, lng, grid)) < 1e-10 * std::max(scale, 1e-12));
    }
  }
  SUBCASE("antilinear in the first slot, linear in the second") {
    PortableRng rng(7);
    const auto a = random_field(rng);
    const auto psi = random_field(rng);
    const Complex base = pseudo_inner(a, psi, grid);
    for (int i = 0; i < 5; ++i) {
      const Complex lam = rng.complex_in_box(2.0);
      const Complex mu = rng.complex_in_box(2.0);
      const Complex got = pseudo_inner(a * lam, psi * mu, grid);
      const Complex want = std::conj(lam) * mu * base;
      CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
    }
  }
  SUBCASE("positivity over random constrained combinations") {
    PortableRng rng(13);
    for (int i = 0; i < 20; ++i) {
      const auto psi = random_field(rng);
      const Complex v = pseudo_inner(psi, psi, grid);
      CHECK(v.real() >= -1e-12 * std::max(1.0, std::abs(v.real())));
    }
  }
  SUBCASE("non-finite fields are rejected") {
    const auto bad = complete_lorenz([](const Vec3&) {
      return Vec3c{Complex{std::nan(""), 0.0}, 0.0, 0.0};
    });
    CHECK_THROWS_WITH_AS(pseudo_inner(bad, bad, grid).real(), "field not integrable on grid",
                         std::runtime_error);
  }
}

TEST_CASE("smeared field") {
  const auto& grid = default_grid();
  const auto psi = transverse_packet();
  SUBCASE("zero dual gives zero") { CHECK(smeared_field(FieldEvaluator::zero(), psi, grid) == 0.0); }
  SUBCASE("same transverse packet gives minus twice the norm") {
    const double v = smeared_field(psi, psi, grid);
    const double n = pseudo_inner(psi, psi, grid).real();
    CHECK(v == doctest::Approx(-2.0 * n).epsilon(1e-14));
  }
  SUBCASE("invariant under simultaneous shifts") {
    PortableRng rng(3);
    const auto a = random_field(rng);
    const SpacetimePoint x{0.7, {0.1, 0.0, -0.3}};
    const double base = smeared_field(a, psi, grid);
    const double shifted = smeared_field(apply_shift(a, x), apply_shift(psi, x), grid);
    CHECK(std::abs(shifted - base) < 1e-10 * std::abs(base));
  }
}

TEST_CASE("wavefunction from test function") {
  SUBCASE("zero test function") {
    CHECK(wavefunction_from_testfunction(TestFunction4D{}).is_zero());
  }
  SUBCASE("hand value for the unit gaussian at k=(0,0,1)") {
    TestFunction4D f;
    f.components[1].push_back({1.0, Vec4::Zero(), 1.0, Vec4::Zero(), TestFunction4D::Trig::Cos, -1});
    const auto psi = wavefunction_from_testfunction(f);
    const Complex v = psi.eval(Vec3{0.0, 0.0, 1.0})(1);
    CHECK(std::abs(v - std::sqrt(2.0 * M_PI) * std::exp(-1.0)) < 1e-14);
  }
  SUBCASE("matches brute-force 4-D quadrature at 3 wave vectors") {
    TestFunction4D f;
    f.components[1].push_back(
        {0.7, Vec4{0.2, -0.3, 0.5, 0.1}, 0.8, Vec4{0.4, 1.0, -0.6, 0.3}, TestFunction4D::Trig::Cos, -1});
    f.components[2].push_back(
        {-0.4, Vec4{-0.1, 0.2, 0.0, 0.4}, 0.9, Vec4{0.2, -0.5, 0.8, 0.0}, TestFunction4D::Trig::Sin, -1});
    const auto psi = wavefunction_from_testfunction(f);
    const Vec3 kvecs[3] = {Vec3{0.0, 0.0, 1.0}, Vec3{0.5, -0.4, 1.2}, Vec3{1.5, 0.3, -0.8}};
    double sup = 0.0;
    for (const auto& k : kvecs) sup = std::max(sup, psi.eval(k).norm());
    for (const auto& k : kvecs) {
      const Vec4c got = psi.eval(k);
      for (int mu = 1; mu <= 2; ++mu) {
        const Complex want =
            std::pow(2.0 * M_PI, -1.5) *
            oracles::quad4d(
                [&](const Vec4& q) {
                  const double phase = q(0) * k.norm() - (q(1) * k(0) + q(2) * k(1) + q(3) * k(2));
                  return std::exp(I * phase) * f.eval(mu, q);
                },
                Vec4{-8.0, -8.0, -8.0, -8.0}, Vec4{8.0, 8.0, 8.0, 8.0}, 40);
        CHECK(std::abs(got(mu) - want) < 1e-6 * sup);
      }
    }
  }
  SUBCASE("translation multiplies by the light-cone phase") {
    TestFunction4D f;
    f.components[1].push_back(
        {0.9, Vec4{0.1, 0.0, -0.2, 0.3}, 1.1, Vec4{0.3, -0.2, 0.5, 0.1}, TestFunction4D::Trig::Cos, -1});
    const SpacetimePoint x{0.6, {-0.2, 0.4, 0.1}};
    // f(q−x) stays in the family: shift the center, split the modulation.
    TestFunction4D fs;
    for (const auto& t : f.components[1]) {
      const double px = t.momentum(0) * x.t + t.momentum(1) * x.x(0) + t.momentum(2) * x.x(1) +
                        t.momentum(3) * x.x(2);
      Vec4 c2 = t.center + Vec4{x.t, x.x(0), x.x(1), x.x(2)};
      fs.components[1].push_back({t.amp * std::cos(px), c2, t.tau, t.momentum, TestFunction4D::Trig::Cos, -1});
      fs.components[1].push_back({t.amp * std::sin(px), c2, t.tau, t.momentum, TestFunction4D::Trig::Sin, -1});
    }
    const auto psi = wavefunction_from_testfunction(f);
    const auto psi_shifted = wavefunction_from_testfunction(fs);
    for (const Vec3& k : {Vec3{0.2, 0.5, 0.9}, Vec3{-1.0, 0.3, 0.4}, Vec3{0.0, 0.0, 2.0}}) {
      const Complex phase = std::exp(I * (k.norm() * x.t - k.dot(x.x)));
      const Vec4c want = phase * psi.eval(k);
      CHECK((psi_shifted.eval(k) - want).norm() < 1e-12 * want.norm());
    }
  }
  SUBCASE("electric-channel transform is automatically constrained") {
    TestFunction4D f;
    f.components[1].push_back({0.8, Vec4{0.0, 0.3, -0.1, 0.2}, 0.9, Vec4::Zero(), TestFunction4D::Trig::Cos, -1});
    f.components[3].push_back({-0.5, Vec4{0.2, 0.0, 0.1, -0.3}, 1.0, Vec4::Zero(), TestFunction4D::Trig::Cos, -1});
    const auto [g, h] = em_smearing_transforms(f);
    const auto psi_g = wavefunction_from_testfunction(g);
    const auto psi_h = wavefunction_from_testfunction(h);
    const auto& grid = default_grid();
    const double sg = psi_g.sup_abs(grid) * grid.k_max;
    CHECK(lorenz_residual(psi_g, grid) < 1e-12 * sg);
    // magnetic channel sits in the radiation gauge already
    for (const auto& k : {Vec3{0.3, -0.8, 1.1}, Vec3{1.2, 0.4, -0.6}}) {
      const Vec4c v = psi_h.eval(k);
      CHECK(std::abs(v(0)) < 1e-13 * v.norm());
      CHECK(std::abs(k(0) * v(1) + k(1) * v(2) + k(2) * v(3)) < 1e-12 * v.norm() * k.norm());
    }
  }
}

TEST_CASE("em smearing transforms") {
  SUBCASE("zero input") {
    const auto [g, h] = em_smearing_transforms(TestFunction4D{});
    CHECK(g.is_zero());
    CHECK(h.is_zero());
  }
  SUBCASE("derivative structure against finite differences of f") {
    TestFunction4D f;
    f.components[1].push_back(
        {0.6, Vec4{0.1, -0.2, 0.3, 0.0}, 0.7, Vec4{0.5, 0.2, -0.4, 0.6}, TestFunction4D::Trig::Cos, -1});
    const auto [g, h] = em_smearing_transforms(f);
    const Vec4 q{0.3, 0.1, -0.2, 0.4};
    auto partial = [&](int mu, int nu) {
      const double hstep = 1e-6;
      Vec4 e = Vec4::Zero();
      e(nu) = hstep;
      return (f.eval(mu, q + e) - f.eval(mu, q - e)) / (2.0 * hstep);
    };
    // only f₁ is present: g₀ = ∂₁f₁, g₁ = −∂₀f₁, h₂ = −∂₃f₁, h₃ = +∂₂f₁
    CHECK(g.eval(0, q) == doctest::Approx(partial(1, 1)).epsilon(1e-8));
    CHECK(g.eval(1, q) == doctest::Approx(-partial(1, 0)).epsilon(1e-8));
    CHECK(h.eval(0, q) == 0.0);
    CHECK(h.eval(1, q) == 0.0);
    CHECK(h.eval(2, q) == doctest::Approx(-partial(1, 3)).epsilon(1e-8));
    CHECK(h.eval(3, q) == doctest::Approx(partial(1, 2)).epsilon(1e-8));
  }
  SUBCASE("test functions evaluate real by construction") {
    TestFunction4D f;
    f.components[2].push_back(
        {1.3, Vec4{0.0, 0.1, 0.2, -0.1}, 0.9, Vec4{0.7, -0.3, 0.2, 0.5}, TestFunction4D::Trig::Sin, -1});
    // realness is structural: eval returns double; check derivative family too
    const auto [g, h] = em_smearing_transforms(f);
    CHECK(std::isfinite(g.eval(0, Vec4{0.2, 0.3, -0.1, 0.0})));
    CHECK(std::isfinite(h.eval(1, Vec4{0.2, 0.3, -0.1, 0.0})));
  }
}

TEST_CASE("potential reconstruction") {
  const auto& grid = default_grid();
  SUBCASE("zero field reconstructs to zero") {
    const Vec4 a = reconstruct_potential(FieldEvaluator::zero(), SpacetimePoint{0.2, {0.1, 0.0, -0.4}}, grid);
    CHECK(a.norm() == 0.0);
  }
  const auto a = FieldEvaluator::gaussian_packet(Vec3c{1.0, Complex{0.0, 0.5}, 0.0}, Vec3{0.6, 0.0, 1.8}, 0.6,
                                                 Complex{1.0, 0.0});
  SUBCASE("reality at random spacetime points") {
    PortableRng rng(19);
    for (int i = 0; i < 20; ++i) {
      const SpacetimePoint q{rng.uniform(-1.0, 1.0),
                             {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}};
      CHECK_NOTHROW(reconstruct_potential(a, q, grid));
    }
  }
  SUBCASE("wave-equation and gauge-divergence residuals scale as h^2") {
    const SpacetimePoint q0{0.3, {0.2, -0.1, 0.4}};
    auto eval_at = [&](double t, const Vec3& x) { return reconstruct_potential(a, {t, x}, grid); };
    auto residuals = [&](double h) {
      const Vec4 c = eval_at(q0.t, q0.x);
      Vec4 plus[4], minus[4];
      plus[0] = eval_at(q0.t + h, q0.x);
      minus[0] = eval_at(q0.t - h, q0.x);
      for (int d = 0; d < 3; ++d) {
        Vec3 e = Vec3::Zero();
        e(d) = h;
        plus[d + 1] = eval_at(q0.t, q0.x + e);
        minus[d + 1] = eval_at(q0.t, q0.x - e);
      }
      // box operator ∂₀² − Σ∂ᵢ² per component, and divergence ∂₀A₀ + Σ∂ᵢAᵢ
      Vec4 box;
      for (int mu = 0; mu < 4; ++mu) {
        double b = (plus[0](mu) - 2.0 * c(mu) + minus[0](mu)) / (h * h);
        for (int d = 1; d <= 3; ++d) b -= (plus[d](mu) - 2.0 * c(mu) + minus[d](mu)) / (h * h);
        box(mu) = b;
      }
      double div = (plus[0](0) - minus[0](0)) / (2.0 * h);
      for (int d = 1; d <= 3; ++d) div += (plus[d](d) - minus[d](d)) / (2.0 * h);
      const double scale = c.norm() + 1e-300;
      return std::pair<double, double>{box.norm() / scale, std::abs(div) / scale};
    };
    const auto [w1, l1] = residuals(0.1);
    const auto [w2, l2] = residuals(0.05);
    const auto [w3, l3] = residuals(0.025);
    // second-order stencils: each halving divides the residual by ~4
    CHECK(w1 / w2 == doctest::Approx(4.0).epsilon(0.35));
    CHECK(w2 / w3 == doctest::Approx(4.0).epsilon(0.35));
    CHECK(l1 / l2 == doctest::Approx(4.0).epsilon(0.35));
    CHECK(l2 / l3 == doctest::Approx(4.0).epsilon(0.35));
    CHECK(w3 < 0.01);
    CHECK(l3 < 0.01);
  }
}

TEST_CASE("radiation projection basics") {
  const auto& grid = default_grid();
  SUBCASE("longitudinal family projects to zero") {
    const auto lng =
        FieldEvaluator::longitudinal(ScalarGaussianSum::constant_bump({1.0, 0.2}, Vec3{0.0, 0.5, 1.6}, 0.9));
    const auto rep = FieldEvaluator::radiation_projected(lng);
    CHECK(rep.sup_abs(grid) < 1e-12 * lng.sup_abs(grid));
  }
  SUBCASE("transverse packet is fixed at its center") {
    const auto psi = transverse_packet();
    const auto rep = FieldEvaluator::radiation_projected(psi);
    const Vec3 k0{0.0, 0.0, 2.0};
    CHECK((rep.eval(k0) - psi.eval(k0)).norm() < 1e-15);
  }
}
