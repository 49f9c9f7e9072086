#include "photonkit/gauge.hpp"

#include <stdexcept>

#include "photonkit/random_fields.hpp"

namespace photonkit {

FieldEvaluator apply_gauge(const FieldEvaluator& a, const GaugeFunction& c) {
  if (c.empty()) return a;
  auto spatial = [c](const Vec3& k) -> Vec3c {
    const Complex v = I * c.eval(k);
    return Vec3c{v * k(0), v * k(1), v * k(2)};
  };
  auto grad = [c](const Vec3& k) -> std::array<Vec3c, 3> {
    const Complex v = I * c.eval(k);
    const Vec3c dc = c.gradient(k);
    std::array<Vec3c, 3> out;
    for (int b = 0; b < 3; ++b)
      for (int alpha = 0; alpha < 3; ++alpha)
        out[b](alpha) = I * dc(b) * k(alpha) + (alpha == b ? v : Complex{0.0, 0.0});
    return out;
  };
  return a + FieldEvaluator::spatial_lorenz(spatial, grad);
}

FieldEvaluator radiation_gauge_representative(const FieldEvaluator& psi) {
  return FieldEvaluator::radiation_projected(psi);
}

EquivalenceReport are_equivalent(const FieldEvaluator& psi, const FieldEvaluator& phi, const MomentumGrid& grid,
                                 int trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("are_equivalent: trials must be >= 1");
  PortableRng rng(seed);
  EquivalenceReport report;
  const double field_scale = positive_norm(psi, grid) + positive_norm(phi, grid);
  double dual_scale = 0.0;
  for (int t = 0; t < trials; ++t) {
    const FieldEvaluator a = random_field(rng);
    dual_scale = std::max(dual_scale, positive_norm(a, grid));
    const Complex r = pseudo_inner(a, psi, grid) - pseudo_inner(a, phi, grid);
    report.residuals.push_back(std::abs(r));
    report.max_residual = std::max(report.max_residual, std::abs(r));
  }
  report.scale = field_scale * dual_scale;
  report.tolerance = tol * std::max(report.scale, 1e-300);
  report.equivalent = report.max_residual < report.tolerance;
  return report;
}

}  // namespace photonkit
