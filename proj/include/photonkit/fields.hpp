#pragma once

#include <array>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "photonkit/quadrature.hpp"
#include "photonkit/types.hpp"

namespace photonkit {

// Value and spatial gradient of a complex 4-component field at one wave vector.
struct FieldJet {
  Vec4c value = Vec4c::Zero();
  std::array<Vec4c, 3> d{Vec4c::Zero(), Vec4c::Zero(), Vec4c::Zero()};  // ∂/∂k_α
};

// Scalar profile c(k): finite sum of Gaussian bumps amp·exp(−|k−c|²/(2σ²)).
// Used for gauge functions and for scalar profiles of degenerate fields.
struct ScalarGaussianSum {
  struct Term {
    Complex amp{0.0, 0.0};
    Vec3 center = Vec3::Zero();
    double sigma = 1.0;
  };
  std::vector<Term> terms;

  Complex eval(const Vec3& k) const;
  Vec3c gradient(const Vec3& k) const;
  bool empty() const { return terms.empty(); }

  static ScalarGaussianSum constant_bump(Complex amp, const Vec3& center, double sigma) {
    return ScalarGaussianSum{{Term{amp, center, sigma}}};
  }
};

// Analytic spacetime test functions: four real components, each a finite sum of
// (optionally linear-polynomial-weighted) Gaussians modulated by cos/sin(p·q).
// Realness is enforced by construction.
struct TestFunction4D {
  enum class Trig { Cos, Sin };
  struct Term {
    double amp = 0.0;
    Vec4 center = Vec4::Zero();
    double tau = 1.0;
    Vec4 momentum = Vec4::Zero();
    Trig trig = Trig::Cos;
    int poly_axis = -1;  // if ≥ 0, extra factor (q_axis − center_axis)
  };
  std::array<std::vector<Term>, 4> components;

  double eval(int mu, const Vec4& q) const;
  bool is_zero() const;
};

// Map k → k' with its Jacobian, used to transport fields under Lorentz maps.
struct WaveVectorMap {
  std::function<Vec3(const Vec3&)> map;
  std::function<Mat3(const Vec3&)> jacobian;
};

// Evaluable complex 4-component field over wave vectors; represents classical
// wave functions ψ_μ(k) and Fourier coefficients a_μ(k). Built as an immutable
// composition tree so that reparameterized evaluation (rotations, boosts) works
// off any fixed grid. Time components are never free data: every constructor
// that takes spatial data derives the time component from the constraint
// |k|·ψ₀(k) = Σ_α k_α ψ_α(k).
class FieldEvaluator {
 public:
  FieldEvaluator();  // zero field

  Vec4c eval(const Vec3& k) const;
  Vec4c operator()(const Vec3& k) const { return eval(k); }
  // Value plus spatial gradient. Analytic for every built-in node; falls back
  // to Richardson-checked central differences for opaque spatial maps and
  // throws "derivative unstable" when the two step sizes disagree.
  FieldJet eval_jet(const Vec3& k) const;

  bool is_zero() const;

  // Spatial Gaussian packet amp·ε·exp(−|k−k₀|²/(2σ²)); time component by
  // constraint completion.
  static FieldEvaluator gaussian_packet(const Vec3c& eps, const Vec3& center, double sigma,
                                        Complex amp = Complex{1.0, 0.0});
  static FieldEvaluator zero();
  static FieldEvaluator linear_combination(std::vector<std::pair<Complex, FieldEvaluator>> terms);
  static FieldEvaluator matrix_action(const Mat4c& m, FieldEvaluator inner);
  static FieldEvaluator reparameterized(WaveVectorMap map, FieldEvaluator inner);
  // Multiplication by exp(i|k|x₀ − i k·x⃗).
  static FieldEvaluator phase_modulated(const SpacetimePoint& shift, FieldEvaluator inner);
  // Constraint completion of an arbitrary spatial map (optional analytic
  // gradient; otherwise finite differences are used for jets).
  static FieldEvaluator spatial_lorenz(std::function<Vec3c(const Vec3&)> spatial,
                                       std::function<std::array<Vec3c, 3>(const Vec3&)> spatial_grad = nullptr);
  // ψ_α(k) = (k_α/|k|)·c(k): the pointwise degenerate direction family.
  static FieldEvaluator longitudinal(const ScalarGaussianSum& profile);
  // Radiation-gauge projection of a field (zero time component, k·φ⃗ = 0).
  static FieldEvaluator radiation_projected(FieldEvaluator inner);
  // Analytic light-cone restriction of the Fourier transform of f.
  static FieldEvaluator from_test_function(const TestFunction4D& f);
  // Test fixture: four independent scalar profiles as raw components, no
  // constraint completion. Exists to exercise failure paths.
  static FieldEvaluator raw_components(const std::array<ScalarGaussianSum, 4>& comps);

  FieldEvaluator operator+(const FieldEvaluator& o) const;
  FieldEvaluator operator-(const FieldEvaluator& o) const;
  FieldEvaluator operator*(Complex c) const;

  // Largest 4-vector norm over grid nodes; scale for residual normalization.
  double sup_abs(const MomentumGrid& grid) const;

  struct Node;

 private:
  explicit FieldEvaluator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ψ₀(k) = Σ_α k_α ψ_α(k) / |k| from spatial data. Rejects k = 0.
Complex lorenz_time_component(const Vec3& k, const Vec3c& spatial);

FieldEvaluator complete_lorenz(std::function<Vec3c(const Vec3&)> spatial);

// Indefinite pairing ⟨a|ψ⟩ = −∫ dk (1/2|k|) [conj(a₀)ψ₀ − Σ_α conj(a_α)ψ_α];
// antilinear in a, linear in ψ. Throws if the quadrature is non-finite.
Complex pseudo_inner(const FieldEvaluator& a, const FieldEvaluator& psi, const MomentumGrid& grid);
// Same with an extra real multiplier m(k) inserted into the integrand.
Complex pseudo_inner_weighted(const FieldEvaluator& a, const FieldEvaluator& psi, const MomentumGrid& grid,
                              const std::function<double(const Vec3&)>& multiplier);

// f(A) = −2 Re⟨a|ψ⟩.
double smeared_field(const FieldEvaluator& a, const FieldEvaluator& psi, const MomentumGrid& grid);

// ∫ dk (1/2|k|³) Σ_{αβ} conj(ψ_α)(|k|²δ_{αβ} − k_α k_β)ψ_β — the positive
// transverse quadratic form (no η prefactor).
double transverse_norm_sq(const FieldEvaluator& psi, const MomentumGrid& grid);
double positive_norm(const FieldEvaluator& psi, const MomentumGrid& grid);

// A_μ(q) = (2π)^{−3/2} ∫ dk (1/2|k|) e^{i q⃗·k⃗}[e^{−i q₀|k|} a_μ(k) + e^{i q₀|k|} conj(a_μ(−k))].
// The imaginary residue is checked against tol·scale and discarded.
Vec4 reconstruct_potential(const FieldEvaluator& a, const SpacetimePoint& q, const MomentumGrid& grid,
                           double reality_tol = 1e-10);

// ψ_μ(k) = (2π)^{−3/2} ∫ dq exp(i q₀|k| − i q⃗·k⃗) f_μ(q), evaluated in closed
// form. The result is not constraint-completed.
FieldEvaluator wavefunction_from_testfunction(const TestFunction4D& f);

// Test functions g (electric channel) and h (magnetic channel) with
// g₀ = Σ_α ∂_α f_α, g_α = −∂₀ f_α, h₀ = 0, h_γ = Σ_{αβ} ε_{αβγ} ∂_β f_α.
std::pair<TestFunction4D, TestFunction4D> em_smearing_transforms(const TestFunction4D& f);

// Max over grid nodes of ||k|ψ₀ − Σ k_α ψ_α|; machine-zero for constrained fields.
double lorenz_residual(const FieldEvaluator& f, const MomentumGrid& grid);

}  // namespace photonkit
