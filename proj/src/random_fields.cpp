#include "photonkit/random_fields.hpp"

#include "photonkit/gauge.hpp"

namespace photonkit {

FieldEvaluator random_packet(PortableRng& rng) {
  Vec3c eps;
  for (int i = 0; i < 3; ++i) eps(i) = rng.complex_in_box(1.0);
  if (eps.norm() < 0.1) eps(0) += Complex{0.5, 0.0};
  const double sigma = rng.uniform(0.6, 1.0);
  const double radius = rng.uniform(1.2, 3.0);
  const double cos_theta = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * M_PI);
  const double s = std::sqrt(1.0 - cos_theta * cos_theta);
  const Vec3 center{radius * s * std::cos(phi), radius * s * std::sin(phi), radius * cos_theta};
  const Complex amp = rng.complex_in_box(1.0) + Complex{0.3, 0.0};
  return FieldEvaluator::gaussian_packet(eps, center, sigma, amp);
}

FieldEvaluator random_field(PortableRng& rng) {
  const int n = 1 + static_cast<int>(rng.raw() % 3);
  std::vector<std::pair<Complex, FieldEvaluator>> terms;
  terms.reserve(n);
  for (int i = 0; i < n; ++i) terms.emplace_back(rng.complex_in_box(1.0) + Complex{0.2, 0.0}, random_packet(rng));
  return FieldEvaluator::linear_combination(std::move(terms));
}

WeylLabel random_label(PortableRng& rng) { return {random_field(rng), random_field(rng)}; }

GaugeFunction random_gauge_function(PortableRng& rng) {
  GaugeFunction c;
  const int n = 1 + static_cast<int>(rng.raw() % 2);
  for (int i = 0; i < n; ++i) {
    GaugeFunction::Term t;
    t.amp = rng.complex_in_box(1.0);
    const double radius = rng.uniform(1.0, 3.0);
    const double cos_theta = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const double s = std::sqrt(1.0 - cos_theta * cos_theta);
    t.center = Vec3{radius * s * std::cos(phi), radius * s * std::sin(phi), radius * cos_theta};
    t.sigma = rng.uniform(0.6, 1.2);
    c.terms.push_back(t);
  }
  return c;
}

}  // namespace photonkit
