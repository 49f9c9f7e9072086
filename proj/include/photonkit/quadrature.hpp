#pragma once

#include <array>
#include <functional>
#include <vector>

#include "photonkit/types.hpp"

namespace photonkit {

// Spherical product rule for ∫_{R³} dk over the shell k_min ≤ |k| ≤ k_max:
// Gauss–Legendre in radius and in cos θ, uniform in azimuth. Weights carry the
// r² Jacobian and approximate the plain Lebesgue measure dk; singular factors
// 1/(2|k|), 1/(2|k|³) are applied by the consuming formulas.
struct MomentumGrid {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  double k_min = 0.0;
  double k_max = 0.0;
  std::array<int, 3> resolution{0, 0, 0};  // (n_radial, n_polar, n_azimuthal)

  std::size_t size() const { return nodes.size(); }
};

// Gauss–Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

MomentumGrid build_grid(double k_min, double k_max, const std::array<int, 3>& resolution);

// Σ_j w_j f(k_j) in node-index order; deterministic for a fixed grid.
// Non-finite integrand values propagate into the result.
Complex integrate(const MomentumGrid& grid, const std::function<Complex(const Vec3&)>& integrand);
double integrate_real(const MomentumGrid& grid, const std::function<double(const Vec3&)>& integrand);

}  // namespace photonkit
