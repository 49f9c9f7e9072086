#pragma once

#include <cstdint>
#include <vector>

#include "photonkit/fields.hpp"

namespace photonkit {

using GaugeFunction = ScalarGaussianSum;

// a'_α(k) = a_α(k) + i c(k) k_α, time component re-derived from the constraint.
FieldEvaluator apply_gauge(const FieldEvaluator& a, const GaugeFunction& c);

// Appendix-style representative: φ₀ = 0, φ_α = ψ_α − λ k_α with
// λ(k) = (1/|k|²) Σ k_α ψ_α(k); k·φ⃗ = 0 pointwise.
FieldEvaluator radiation_gauge_representative(const FieldEvaluator& psi);

struct EquivalenceReport {
  bool equivalent = false;
  double max_residual = 0.0;          // max |⟨a|ψ⟩ − ⟨a|φ⟩| over trials
  double scale = 0.0;                 // (‖ψ‖ + ‖φ‖)·max‖a‖ normalization
  double tolerance = 0.0;             // tol·scale actually applied
  std::vector<double> residuals;      // per-trial
};

// Randomized duals: ψ ≍ φ iff ⟨a|ψ⟩ = ⟨a|φ⟩ for all a; sampled with `trials`
// seeded random constraint-completed a-fields.
EquivalenceReport are_equivalent(const FieldEvaluator& psi, const FieldEvaluator& phi,
                                 const MomentumGrid& grid, int trials = 16,
                                 std::uint64_t seed = 1, double tol = 1e-10);

}  // namespace photonkit
