#include "photonkit/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace photonkit {

// Newton iteration on P_n, nodes seeded by the Chebyshev-like estimate.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence up to degree n.
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

MomentumGrid build_grid(double k_min, double k_max, const std::array<int, 3>& resolution) {
  if (!(k_min > 0.0) || !(k_min < k_max))
    throw std::invalid_argument("build_grid: invalid bounds, need 0 < k_min < k_max");
  for (int r : resolution)
    if (r < 2) throw std::invalid_argument("build_grid: each resolution component must be >= 2");

  const int nr = resolution[0], nt = resolution[1], np = resolution[2];
  std::vector<double> xr, wr, xc, wc;
  gauss_legendre(nr, xr, wr);
  gauss_legendre(nt, xc, wc);

  MomentumGrid grid;
  grid.k_min = k_min;
  grid.k_max = k_max;
  grid.resolution = resolution;
  grid.nodes.reserve(static_cast<std::size_t>(nr) * nt * np);
  grid.weights.reserve(grid.nodes.capacity());

  const double half = 0.5 * (k_max - k_min);
  const double mid = 0.5 * (k_max + k_min);
  const double wphi = 2.0 * M_PI / np;
  for (int ir = 0; ir < nr; ++ir) {
    const double r = half * xr[ir] + mid;
    const double wrad = wr[ir] * half * r * r;
    for (int it = 0; it < nt; ++it) {
      const double c = xc[it];
      const double s = std::sqrt(1.0 - c * c);
      for (int ip = 0; ip < np; ++ip) {
        const double phi = wphi * ip;
        grid.nodes.emplace_back(r * s * std::cos(phi), r * s * std::sin(phi), r * c);
        grid.weights.push_back(wrad * wc[it] * wphi);
      }
    }
  }
  return grid;
}

Complex integrate(const MomentumGrid& grid, const std::function<Complex(const Vec3&)>& integrand) {
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) acc += grid.weights[j] * integrand(grid.nodes[j]);
  return acc;
}

double integrate_real(const MomentumGrid& grid, const std::function<double(const Vec3&)>& integrand) {
  double acc = 0.0;
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) acc += grid.weights[j] * integrand(grid.nodes[j]);
  return acc;
}

}  // namespace photonkit
