#pragma once

#include <span>
#include <vector>

#include "photonkit/fields.hpp"

namespace photonkit {

// Group element (a, ψ) of H*×H labelling W(a,ψ); the vacuum is (0,0).
struct WeylLabel {
  FieldEvaluator a;
  FieldEvaluator psi;

  static WeylLabel vacuum() { return {}; }
  bool is_vacuum() const { return a.is_zero() && psi.is_zero(); }

  WeylLabel operator+(const WeylLabel& o) const { return {a + o.a, psi + o.psi}; }
  WeylLabel operator-(const WeylLabel& o) const { return {a - o.a, psi - o.psi}; }
  WeylLabel operator*(Complex c) const { return {a * c, psi * c}; }
};

struct Tolerances {
  double negative_norm = 1e-10;   // guard on ⟨d|d⟩ of difference vectors
  double psd = 1e-10;             // Gram eigenvalue floor, relative to ‖G‖
  double hermiticity = 1e-12;
  double identity = 1e-10;        // algebraic identity residuals
  double derivative = 1e-6;       // finite-difference cross-checks
  double reality = 1e-10;
  double pointwise = 1e-12;
  double idempotence = 1e-14;

  Tolerances scaled(double s) const {
    Tolerances t = *this;
    t.negative_norm *= s;
    t.psd *= s;
    t.hermiticity *= s;
    t.identity *= s;
    t.derivative *= s;
    t.reality *= s;
    t.pointwise *= s;
    t.idempotence *= s;
    return t;
  }
};

// Configuration evaluating the vacuum correlation functional and everything
// derived from it. η defaults to the physical calibration 2 but stays generic
// so the η-dependence of the identities is itself testable.
struct CorrelationKernel {
  double eta = 2.0;
  MomentumGrid grid;
  Tolerances tol;
};

// a + iη·ψ.
FieldEvaluator combined_vector(const WeylLabel& label, double eta);

// F(x; y) = exp(−(i/2η) Im⟨B_y|B_x⟩) · exp(−(1/4η)⟨B_y−B_x|B_y−B_x⟩) with
// B = a + iηψ. Throws "negative norm" when the difference norm dips below
// −tol (a broken constraint, never a valid state).
Complex correlation(const CorrelationKernel& kernel, const WeylLabel& x, const WeylLabel& y);

// s(x; y) = η⁻¹ Im⟨B_x|B_y⟩; antisymmetric, real-bilinear.
double symplectic_form(const CorrelationKernel& kernel, const WeylLabel& x, const WeylLabel& y);

// |F(x;y) − exp(−(i/2) s(y;x)) F(x−y; 0)|.
double weyl_identity_residual(const CorrelationKernel& kernel, const WeylLabel& x, const WeylLabel& y);

// G[j][j'] = F(x_j; x_{j'}), symmetrized; throws "positivity violated" when the
// minimum eigenvalue dips below −tol·‖G‖.
Eigen::MatrixXcd gram_matrix(const CorrelationKernel& kernel, std::span<const WeylLabel> labels);
double gram_min_eigenvalue(const Eigen::MatrixXcd& g);

// ⟨W(y)*Ω| Â(χ) W(x)*Ω⟩ = (1/2)[⟨B_x|χ⟩ + ⟨χ|B_y⟩]·F(x;y).
Complex field_op_matrix_element(const CorrelationKernel& kernel, const WeylLabel& y,
                                const FieldEvaluator& chi, const WeylLabel& x);

// ⟨W(y)*Ω| F̂(d) W(x)*Ω⟩ = (i/2η)[⟨d|B_y⟩ − ⟨B_x|d⟩]·F(x;y).
Complex f_op_matrix_element(const CorrelationKernel& kernel, const WeylLabel& y,
                            const FieldEvaluator& d, const WeylLabel& x);

// max over probes y of |⟨W(y)*Ω|(Â(ψ) − iÂ(iψ))Ω⟩|.
double annihilator_vacuum_residual(const CorrelationKernel& kernel, const FieldEvaluator& psi,
                                   std::span<const WeylLabel> probes);

struct OnePhotonNorm {
  double value = 0.0;           // (η/2)⟨ψ|ψ⟩
  double bilinear_form = 0.0;   // via the indefinite pairing
  double projector_form = 0.0;  // via the transverse quadratic form
  double form_mismatch = 0.0;   // relative disagreement
  double magnitude = 0.0;       // (η/2)·unprojected spatial mass, scale for degeneracy
};

// ‖Â₊(ψ)Ω‖² computed both ways; throws "form mismatch" if the two routes
// disagree beyond tol (signals a broken constraint completion).
OnePhotonNorm one_photon_norm(const CorrelationKernel& kernel, const FieldEvaluator& psi,
                              double rel_tol = 1e-10);
double one_photon_norm_sq(const CorrelationKernel& kernel, const FieldEvaluator& psi);

struct CcrReport {
  // [Â₊(ψ), Â₋(φ)] computed from symplectic data vs −(η/2)⟨ψ|φ⟩
  Complex create_annihilate_lhs{0.0, 0.0};
  Complex create_annihilate_rhs{0.0, 0.0};
  double create_annihilate_residual = 0.0;
  // [Â₋(ψ), Â₋(φ)] must vanish
  double annihilate_annihilate_residual = 0.0;
  double scale = 0.0;
};

CcrReport creation_annihilation_ccr_check(const CorrelationKernel& kernel, const FieldEvaluator& psi,
                                          const FieldEvaluator& phi);

}  // namespace photonkit
