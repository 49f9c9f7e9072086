#pragma once

#include <Eigen/Dense>
#include <complex>

namespace photonkit {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec3c = Eigen::Vector3cd;
using Vec4c = Eigen::Vector4cd;
using Mat3 = Eigen::Matrix3d;
using Mat4c = Eigen::Matrix4cd;

constexpr Complex I{0.0, 1.0};

// Spacetime point / shift q = (q0, q⃗), units with c = 1.
struct SpacetimePoint {
  double t = 0.0;
  Vec3 x = Vec3::Zero();

  SpacetimePoint() = default;
  SpacetimePoint(double t_, const Vec3& x_) : t(t_), x(x_) {}
  SpacetimePoint(double t_, double x1, double x2, double x3) : t(t_), x(x1, x2, x3) {}

  SpacetimePoint operator+(const SpacetimePoint& o) const { return {t + o.t, x + o.x}; }
  SpacetimePoint operator-() const { return {-t, -x}; }
  bool finite() const { return std::isfinite(t) && x.allFinite(); }
};

}  // namespace photonkit
