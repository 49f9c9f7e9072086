#include "photonkit/poincare.hpp"

#include <cmath>
#include <stdexcept>

namespace photonkit {

namespace {

inline Complex kdot(const Vec3& k, const Vec3c& s) { return k(0) * s(0) + k(1) * s(1) + k(2) * s(2); }

const Vec3 kConstraintProbes[3] = {Vec3{1.3, 0.2, 0.7}, Vec3{0.4, -1.1, 2.0}, Vec3{-2.2, 0.5, -0.6}};

Mat4c spatial_block(const Mat3& r) {
  Mat4c m = Mat4c::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) = Complex(r(i, j), 0.0);
  return m;
}

int round_up_even(double x) {
  int n = static_cast<int>(std::ceil(x - 1e-12));
  if (n % 2 != 0) ++n;
  return std::max(n, 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// LorentzElement

LorentzElement::LorentzElement(Mat4c m, WaveVectorMap km, Eigen::Matrix4d cone, double rap)
    : matrix_(std::move(m)), kmap_(std::move(km)), cone_(std::move(cone)), rapidity_(rap) {
  // Metric preservation: Λᵀ g Λ = g.
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g.diagonal() << 1.0, -1.0, -1.0, -1.0;
  const Mat4c gc = g.cast<Complex>();
  const Mat4c res = matrix_.transpose() * gc * matrix_ - gc;
  if (res.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("LorentzElement: matrix does not preserve the metric");
}

LorentzElement LorentzElement::identity() {
  WaveVectorMap km{[](const Vec3& k) { return k; }, [](const Vec3&) { return Mat3::Identity(); }};
  return LorentzElement(Mat4c::Identity(), std::move(km), Eigen::Matrix4d::Identity(), 0.0);
}

LorentzElement LorentzElement::from_rotation(const Mat3& r) {
  const Mat3 rinv = r.transpose();
  WaveVectorMap km{[rinv](const Vec3& k) -> Vec3 { return rinv * k; },
                   [rinv](const Vec3&) -> Mat3 { return rinv; }};
  Eigen::Matrix4d cone = Eigen::Matrix4d::Identity();
  cone.block<3, 3>(1, 1) = rinv;
  return LorentzElement(spatial_block(r), std::move(km), std::move(cone), 0.0);
}

LorentzElement LorentzElement::rotation(const Vec3& axis, double angle) {
  const Vec3 n = axis.normalized();
  return from_rotation(Eigen::AngleAxisd(angle, n).toRotationMatrix());
}

LorentzElement LorentzElement::boost3(double chi) {
  const double ch = std::cosh(chi), sh = std::sinh(chi);
  Mat4c m = Mat4c::Identity();
  m(0, 0) = ch;
  m(0, 3) = -sh;
  m(3, 0) = -sh;
  m(3, 3) = ch;
  WaveVectorMap km{[ch, sh](const Vec3& k) -> Vec3 {
                     return Vec3{k(0), k(1), ch * k(2) + sh * k.norm()};
                   },
                   [ch, sh](const Vec3& k) -> Mat3 {
                     const double kn = k.norm();
                     Mat3 j = Mat3::Identity();
                     j(2, 0) = sh * k(0) / kn;
                     j(2, 1) = sh * k(1) / kn;
                     j(2, 2) = ch + sh * k(2) / kn;
                     return j;
                   }};
  Eigen::Matrix4d cone = Eigen::Matrix4d::Identity();
  cone(0, 0) = ch;
  cone(0, 3) = sh;
  cone(3, 0) = sh;
  cone(3, 3) = ch;
  return LorentzElement(std::move(m), std::move(km), std::move(cone), std::abs(chi));
}

LorentzElement LorentzElement::compose(const LorentzElement& first, const LorentzElement& second) {
  const auto km1 = first.kmap_;
  const auto km2 = second.kmap_;
  WaveVectorMap km{[km1, km2](const Vec3& k) -> Vec3 { return km2.map(km1.map(k)); },
                   [km1, km2](const Vec3& k) -> Mat3 {
                     return km2.jacobian(km1.map(k)) * km1.jacobian(k);
                   }};
  return LorentzElement(first.matrix_ * second.matrix_, std::move(km), second.cone_ * first.cone_,
                        first.rapidity_ + second.rapidity_);
}

void LorentzElement::check_light_cone(const Vec3& k, double tol) const {
  const Vec3 kp = kmap_.map(k);
  Eigen::Vector4d null_in;
  null_in << k.norm(), k(0), k(1), k(2);
  const Eigen::Vector4d null_out = cone_ * null_in;
  const double scale = std::max(1.0, null_out.norm());
  if (!kp.allFinite() || std::abs(kp.norm() - null_out(0)) > tol * scale ||
      (kp - null_out.tail<3>()).norm() > tol * scale)
    throw std::runtime_error("light-cone violation: induced wave-vector map inconsistent");
}

// ---------------------------------------------------------------------------

FieldEvaluator apply_shift(const FieldEvaluator& f, const SpacetimePoint& x) {
  if (!x.finite()) throw std::invalid_argument("apply_shift: non-finite shift");
  return FieldEvaluator::phase_modulated(x, f);
}

WeylLabel apply_shift(const WeylLabel& label, const SpacetimePoint& x) {
  return {apply_shift(label.a, x), apply_shift(label.psi, x)};
}

FieldEvaluator apply_lorentz(const FieldEvaluator& f, const LorentzElement& L) {
  return FieldEvaluator::matrix_action(L.matrix(), FieldEvaluator::reparameterized(L.kmap(), f));
}

WeylLabel apply_lorentz(const WeylLabel& label, const LorentzElement& L) {
  WeylLabel out{apply_lorentz(label.a, L), apply_lorentz(label.psi, L)};
  for (const auto& k : kConstraintProbes) {
    L.check_light_cone(k);
    for (const FieldEvaluator* f : {&out.a, &out.psi}) {
      if (f->is_zero()) continue;
      const Vec4c v = f->eval(k);
      const Complex r = k.norm() * v(0) - kdot(k, Vec3c{v(1), v(2), v(3)});
      if (std::abs(r) > 1e-10 * std::max(1.0, v.norm()))
        throw std::runtime_error("light-cone violation: transported field breaks the constraint");
    }
  }
  return out;
}

MomentumGrid boosted_grid(const MomentumGrid& base, double rapidity) {
  const double chi = std::abs(rapidity);
  if (chi == 0.0) return base;
  const int f = 1 + static_cast<int>(std::ceil(3.0 * chi - 1e-12));
  std::array<int, 3> res;
  for (int i = 0; i < 3; ++i) res[i] = round_up_even(static_cast<double>(base.resolution[i]) * f);
  return build_grid(base.k_min * std::exp(-chi), base.k_max * std::exp(chi), res);
}

MomentumGrid refined_grid_for_sigma(const MomentumGrid& base, double sigma_min) {
  if (!(sigma_min > 0.0)) throw std::invalid_argument("refined_grid_for_sigma: sigma must be positive");
  int f = static_cast<int>(std::ceil(0.5 / sigma_min - 1e-12));
  f = std::clamp(f, 1, 6);
  if (f == 1) return base;
  std::array<int, 3> res;
  res[0] = round_up_even(static_cast<double>(base.resolution[0]) * f);
  res[1] = round_up_even(static_cast<double>(base.resolution[1]) * f);
  res[2] = std::min(round_up_even(static_cast<double>(base.resolution[2]) * std::min(f, 2)), 64);
  return build_grid(base.k_min, base.k_max, res);
}

// ---------------------------------------------------------------------------
// Generators

Complex generator_K_matrix_element(const CorrelationKernel& kernel, const WeylLabel& y, int mu,
                                   const WeylLabel& x) {
  if (mu < 0 || mu > 3) throw std::invalid_argument("generator_K_matrix_element: mu out of range");
  const FieldEvaluator bx = combined_vector(x, kernel.eta);
  const FieldEvaluator by = combined_vector(y, kernel.eta);
  if (bx.is_zero() && by.is_zero()) return {0.0, 0.0};
  std::function<double(const Vec3&)> mult;
  if (mu == 0)
    mult = [](const Vec3& k) { return k.norm(); };
  else
    mult = [mu](const Vec3& k) { return k(mu - 1); };
  const Complex inner = pseudo_inner_weighted(bx, by, kernel.grid, mult);
  return correlation(kernel, x, y) * inner / (2.0 * kernel.eta);
}

Mat4c spin_matrix(int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3 || mu == nu)
    throw std::invalid_argument("spin_matrix: need distinct indices in 0..3");
  Mat4c s = Mat4c::Zero();
  s(mu, nu) = I;
  s(nu, mu) = -I;
  return s;
}

namespace {

// ⟨B_x| op(B_y) ⟩ with op built from the value and gradient of B_y.
Complex pseudo_inner_operator(const FieldEvaluator& bx, const FieldEvaluator& by, const MomentumGrid& grid,
                              const std::function<Vec4c(const Vec3&, const FieldJet&)>& op) {
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const Vec3& k = grid.nodes[j];
    const Vec4c vx = bx.eval(k);
    const Vec4c ov = op(k, by.eval_jet(k));
    const Complex contraction =
        std::conj(vx(0)) * ov(0) - std::conj(vx(1)) * ov(1) - std::conj(vx(2)) * ov(2) - std::conj(vx(3)) * ov(3);
    acc += grid.weights[j] / (2.0 * k.norm()) * contraction;
  }
  acc = -acc;
  if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
    throw std::runtime_error("field not integrable on grid");
  return acc;
}

Complex rotation12_element(const CorrelationKernel& kernel, const WeylLabel& y, const WeylLabel& x) {
  const FieldEvaluator bx = combined_vector(x, kernel.eta);
  const FieldEvaluator by = combined_vector(y, kernel.eta);
  if (bx.is_zero() && by.is_zero()) return {0.0, 0.0};
  const Mat4c s12 = spin_matrix(1, 2);
  auto op = [&s12](const Vec3& k, const FieldJet& jet) -> Vec4c {
    // (S₁₂ + L₁₂) v with L₁₂ = i(k₁∂₂ − k₂∂₁)
    return s12 * jet.value + I * (k(0) * jet.d[1] - k(1) * jet.d[0]);
  };
  const Complex inner = pseudo_inner_operator(bx, by, kernel.grid, op);
  return correlation(kernel, x, y) * inner / (2.0 * kernel.eta);
}

Complex boost03_element(const CorrelationKernel& kernel, const WeylLabel& y, const WeylLabel& x) {
  const FieldEvaluator bx = combined_vector(x, kernel.eta);
  const FieldEvaluator by = combined_vector(y, kernel.eta);
  if (bx.is_zero() && by.is_zero()) return {0.0, 0.0};
  // Boost spin block: +i at (0,3) and (3,0). Boost generators act on plain
  // (lower-index) components through one metric raise, which symmetrizes the
  // block; rotation blocks stay antisymmetric.
  Mat4c s = Mat4c::Zero();
  s(0, 3) = I;
  s(3, 0) = I;
  auto op = [&s](const Vec3& k, const FieldJet& jet) -> Vec4c {
    // (S⁰³ − L₀₃) v with L₀₃ = i|k|∂₃
    return s * jet.value - I * k.norm() * jet.d[2];
  };
  const Complex inner = pseudo_inner_operator(bx, by, kernel.grid, op);
  return -correlation(kernel, x, y) * inner / (2.0 * kernel.eta);
}

// Cyclic permutation e₁→e₂→e₃→e₁: exactly orthogonal, carries the canonical
// (1,2) rotation plane and the canonical boost axis onto the other cases.
Mat3 cyclic_matrix() {
  Mat3 p = Mat3::Zero();
  p(1, 0) = 1.0;
  p(2, 1) = 1.0;
  p(0, 2) = 1.0;
  return p;
}

}  // namespace

Complex generator_M_matrix_element(const CorrelationKernel& kernel, const WeylLabel& y, int mu, int nu,
                                   const WeylLabel& x) {
  if (mu == nu) throw std::invalid_argument("generator_M_matrix_element: indices must differ");
  // Normalize index order, tracking M_{νμ} = −M_{μν}.
  auto supported = [](int s, int t) {
    return (s == 1 && t == 2) || (s == 2 && t == 3) || (s == 3 && t == 1) ||
           (s == 0 && (t == 1 || t == 2 || t == 3));
  };
  double sign = 1.0;
  int a = mu, b = nu;
  if (!supported(a, b)) {
    std::swap(a, b);
    sign = -sign;
    if (!supported(a, b)) throw std::invalid_argument("generator_M_matrix_element: unsupported index pair");
  }

  // M = V(W) M_canonical V(W)⁻¹ ⇒ element between labels conjugated by W⁻¹.
  auto conjugated = [&](const Mat3& w_inv, bool boost) -> Complex {
    const LorentzElement lw = LorentzElement::from_rotation(w_inv);
    const WeylLabel yc = apply_lorentz(y, lw);
    const WeylLabel xc = apply_lorentz(x, lw);
    return boost ? boost03_element(kernel, yc, xc) : rotation12_element(kernel, yc, xc);
  };

  const Mat3 p = cyclic_matrix();
  Complex value;
  if (a == 1 && b == 2)
    value = rotation12_element(kernel, y, x);
  else if (a == 0 && b == 3)
    value = boost03_element(kernel, y, x);
  else if (a == 2 && b == 3)
    value = conjugated(p.transpose(), false);  // W = P
  else if (a == 3 && b == 1)
    value = conjugated(p, false);  // W = P², W⁻¹ = P
  else if (a == 0 && b == 1)
    value = conjugated(p.transpose(), true);
  else if (a == 0 && b == 2)
    value = conjugated(p, true);
  else
    throw std::invalid_argument("generator_M_matrix_element: unsupported index pair");
  return sign * value;
}

// ---------------------------------------------------------------------------
// Spin structure

SpinParts spin12_decompose(const FieldEvaluator& psi) {
  Mat4c pplus = Mat4c::Zero(), pminus = Mat4c::Zero(), pzero = Mat4c::Zero();
  pplus(1, 1) = 0.5;
  pplus(1, 2) = 0.5 * I;
  pplus(2, 1) = -0.5 * I;
  pplus(2, 2) = 0.5;
  pminus(1, 1) = 0.5;
  pminus(1, 2) = -0.5 * I;
  pminus(2, 1) = 0.5 * I;
  pminus(2, 2) = 0.5;
  pzero(0, 0) = 1.0;
  pzero(3, 3) = 1.0;
  return SpinParts{FieldEvaluator::matrix_action(pplus, psi), FieldEvaluator::matrix_action(pzero, psi),
                   FieldEvaluator::matrix_action(pminus, psi)};
}

SpinPartNorms spin_part_norms(const FieldEvaluator& psi, const MomentumGrid& grid) {
  const SpinParts parts = spin12_decompose(psi);
  SpinPartNorms out;
  out.plus = transverse_norm_sq(parts.plus, grid);
  out.zero = transverse_norm_sq(parts.zero, grid);
  out.minus = transverse_norm_sq(parts.minus, grid);
  out.total = transverse_norm_sq(psi, grid);
  return out;
}

PolarizationAudit polarization_audit(const FieldEvaluator& psi, const MomentumGrid& grid,
                                     double membership_tol, double rad_tol) {
  PolarizationAudit audit;
  double sup3 = 0.0, rp_angle = 0.0, rm_angle = 0.0, rp_circ = 0.0, rm_circ = 0.0, r_k3 = 0.0;
  double mass = 0.0, mass_off = 0.0, kref_acc = 0.0;
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const Vec3& k = grid.nodes[j];
    const double kn = k.norm();
    const Vec4c v = psi.eval(k);
    audit.sup_psi = std::max(audit.sup_psi, v.norm());
    audit.time_component_sup = std::max(audit.time_component_sup, std::abs(v(0)));
    sup3 = std::max(sup3, std::abs(v(3)));
    rp_angle = std::max(rp_angle, std::abs(Complex(k(0), -k(1)) * v(1)));
    rm_angle = std::max(rm_angle, std::abs(Complex(k(0), k(1)) * v(1)));
    rp_circ = std::max(rp_circ, std::abs(v(2) + I * v(1)));
    rm_circ = std::max(rm_circ, std::abs(v(2) - I * v(1)));
    r_k3 = std::max(r_k3, std::abs(k(2) * v(3)));
    const Vec3c s{v(1), v(2), v(3)};
    const double density =
        grid.weights[j] * (kn * kn * s.squaredNorm() - std::norm(kdot(k, s))) / (2.0 * kn * kn * kn);
    mass += density;
    kref_acc += density * kn;
    const double sin_theta = std::sqrt(k(0) * k(0) + k(1) * k(1)) / kn;
    if (sin_theta > 0.35) mass_off += density;
  }

  if (audit.sup_psi <= 0.0) {
    audit.classification = "zero";
    audit.h0_claim_ok = true;
    return audit;
  }
  if (audit.time_component_sup > rad_tol * audit.sup_psi)
    throw std::runtime_error("not radiation gauge: time component does not vanish");

  audit.k_ref = mass > 0.0 ? kref_acc / mass : 1.0;
  const double norm_scale = audit.sup_psi * std::max(audit.k_ref, 1e-300);
  audit.hplus_angle_residual = rp_angle / norm_scale;
  audit.hminus_angle_residual = rm_angle / norm_scale;
  audit.hplus_circ_residual = rp_circ / audit.sup_psi;
  audit.hminus_circ_residual = rm_circ / audit.sup_psi;
  audit.k3_psi3_residual = r_k3 / norm_scale;
  audit.off_axis_fraction = mass > 0.0 ? mass_off / mass : 0.0;

  audit.h0_sup_psi3 = sup3 / audit.sup_psi;
  audit.h0_transversality = (sup3 > 1e-12 * audit.sup_psi) ? r_k3 / (sup3 * audit.k_ref) : 0.0;
  audit.h0_claim_ok = (sup3 <= 1e-10 * audit.sup_psi) || (audit.h0_transversality > 0.5);

  const bool hplus = std::max({audit.hplus_angle_residual, audit.hplus_circ_residual,
                               audit.k3_psi3_residual}) < membership_tol;
  const bool hminus = std::max({audit.hminus_angle_residual, audit.hminus_circ_residual,
                                audit.k3_psi3_residual}) < membership_tol;
  audit.classification = hplus ? "H+" : (hminus ? "H-" : "mixed");
  return audit;
}

}  // namespace photonkit
