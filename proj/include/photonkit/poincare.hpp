#pragma once

#include <string>

#include "photonkit/vacuum.hpp"

namespace photonkit {

// Proper Lorentz transformation together with its induced wave-vector map.
// The matrix acts on the stored (covariant) components; the k-map sends the
// positive light cone to itself.
class LorentzElement {
 public:
  static LorentzElement identity();
  // Spatial rotation by angle about a (normalized) axis.
  static LorentzElement rotation(const Vec3& axis, double angle);
  // Rotation given directly by an orthogonal 3×3 matrix (exact permutations).
  static LorentzElement from_rotation(const Mat3& r);
  // Boost of rapidity chi along the third axis, component action
  //   a'₀(k) = cosh(χ) a₀(k') − sinh(χ) a₃(k'),
  //   a'₃(k) = −sinh(χ) a₀(k') + cosh(χ) a₃(k'),
  //   k' = (k₁, k₂, cosh(χ) k₃ + sinh(χ)|k|).
  static LorentzElement boost3(double chi);
  // first ∘ second: apply `second` to the label, then `first`.
  static LorentzElement compose(const LorentzElement& first, const LorentzElement& second);

  const Mat4c& matrix() const { return matrix_; }
  const WaveVectorMap& kmap() const { return kmap_; }
  double max_abs_rapidity() const { return rapidity_; }

  // |k'| of the induced map must agree with the transported null vector
  // (|k|, k) ↦ cone·(|k|, k); throws "light-cone violation" beyond tol.
  void check_light_cone(const Vec3& k, double tol = 1e-12) const;

 private:
  LorentzElement(Mat4c m, WaveVectorMap km, Eigen::Matrix4d cone, double rap);
  Mat4c matrix_;
  WaveVectorMap kmap_;
  Eigen::Matrix4d cone_;   // wave-4-vector transport
  double rapidity_ = 0.0;  // accumulated |χ|, drives grid auto-scaling
};

FieldEvaluator apply_shift(const FieldEvaluator& f, const SpacetimePoint& x);
WeylLabel apply_shift(const WeylLabel& label, const SpacetimePoint& x);

FieldEvaluator apply_lorentz(const FieldEvaluator& f, const LorentzElement& L);
// Transports both components and re-verifies the constraint at sample points.
WeylLabel apply_lorentz(const WeylLabel& label, const LorentzElement& L);

// Grid enlarged (shell stretched by e^{|χ|}, node counts scaled) so transported
// packets stay resolved inside the shell.
MomentumGrid boosted_grid(const MomentumGrid& base, double rapidity);
// Grid with node counts scaled for packets of width sigma_min (radial/polar
// spacing must resolve the packet; azimuthal count capped).
MomentumGrid refined_grid_for_sigma(const MomentumGrid& base, double sigma_min);

// ⟨W(y)*Ω| K̂_μ W(x)*Ω⟩ = (1/2η) F(x;y) ⟨B_x| m_μ(k) B_y⟩ with m₀ = |k|,
// m_α = k_α. The unitary flow attached to K̂₀ is the time shift with +i d/dt;
// the spatial K̂_α flows run with −i d/dt along +e_α (metric signature).
Complex generator_K_matrix_element(const CorrelationKernel& kernel, const WeylLabel& y, int mu,
                                   const WeylLabel& x);

// ⟨W(y)*Ω| M̂_{μν} W(x)*Ω⟩. Canonical cases:
//   (1,2): (1/2η) F ⟨B_x|(S₁₂ + L₁₂) B_y⟩,  L₁₂ = i(k₁∂₂ − k₂∂₁)
//   (0,3): −(1/2η) F ⟨B_x|(S⁰³ − L₀₃) B_y⟩, L₀₃ = i|k|∂₃
// Rotation spin blocks are antisymmetric (±i); the boost spin block is
// symmetric (+i at both entries) because one index is raised with the metric
// before the matrix acts on plain components. Other axes are obtained by
// conjugating the labels with exact rotations.
Complex generator_M_matrix_element(const CorrelationKernel& kernel, const WeylLabel& y, int mu, int nu,
                                   const WeylLabel& x);

// S_{μν}: i at (μ,ν), −i at (ν,μ).
Mat4c spin_matrix(int mu, int nu);

struct SpinParts {
  FieldEvaluator plus;   // S₁₂ eigenvalue +1
  FieldEvaluator zero;   // eigenvalue 0 (components 0 and 3)
  FieldEvaluator minus;  // eigenvalue −1
};

// Pointwise split along the S₁₂ eigenbasis: circular combinations
// (ψ₁ ∓ iψ₂)/2 recombined as eigenvectors, components 0 and 3 in the kernel.
// Parts sum to ψ exactly.
SpinParts spin12_decompose(const FieldEvaluator& psi);

struct SpinPartNorms {
  double plus = 0.0, zero = 0.0, minus = 0.0, total = 0.0;  // transverse-form norms²
};
SpinPartNorms spin_part_norms(const FieldEvaluator& psi, const MomentumGrid& grid);

struct PolarizationAudit {
  double sup_psi = 0.0;               // max 4-vector magnitude over the grid
  double k_ref = 0.0;                 // norm-mass-weighted mean |k|
  double time_component_sup = 0.0;    // must vanish in radiation gauge
  double hplus_angle_residual = 0.0;  // sup |(k₁−ik₂)ψ₁| / (sup·k_ref)
  double hminus_angle_residual = 0.0; // sup |(k₁+ik₂)ψ₁| / (sup·k_ref)
  double hplus_circ_residual = 0.0;   // sup |ψ₂+iψ₁| / sup
  double hminus_circ_residual = 0.0;  // sup |ψ₂−iψ₁| / sup
  double k3_psi3_residual = 0.0;      // sup |k₃ψ₃| / (sup·k_ref)
  double off_axis_fraction = 0.0;     // transverse-norm mass with sinθ > 0.35
  // Zero-eigenspace claim: the S₁₂-kernel part of a radiation-gauge field is
  // either negligible or grossly violates transversality.
  double h0_sup_psi3 = 0.0;
  double h0_transversality = 0.0;     // sup|k₃ψ₃| / (sup|ψ₃|·k_ref), 0 when ψ₃≈0
  bool h0_claim_ok = false;
  std::string classification;         // "zero" | "H+" | "H-" | "mixed"
};

// Requires a radiation-gauge representative; throws "not radiation gauge"
// when the time component exceeds tol·scale.
PolarizationAudit polarization_audit(const FieldEvaluator& psi, const MomentumGrid& grid,
                                     double membership_tol = 0.25, double rad_tol = 1e-10);

}  // namespace photonkit
