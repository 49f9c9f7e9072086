#include "photonkit/vacuum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace photonkit {

namespace {

inline Complex metric_contraction(const Vec4c& a, const Vec4c& b) {
  return std::conj(a(0)) * b(0) - std::conj(a(1)) * b(1) - std::conj(a(2)) * b(2) - std::conj(a(3)) * b(3);
}

struct PairData {
  Complex inner_yx{0.0, 0.0};  // ⟨B_y|B_x⟩
  double diff_norm = 0.0;      // ⟨B_y−B_x|B_y−B_x⟩
  double diff_abs = 0.0;       // Euclidean magnitude of the difference, scale for the guard
};

PairData pair_data(const CorrelationKernel& kernel, const FieldEvaluator& bx, const FieldEvaluator& by) {
  PairData out;
  Complex inner{0.0, 0.0};
  double dn = 0.0, da = 0.0;
  for (std::size_t j = 0; j < kernel.grid.nodes.size(); ++j) {
    const Vec3& k = kernel.grid.nodes[j];
    const double w = kernel.grid.weights[j] / (2.0 * k.norm());
    const Vec4c vx = bx.eval(k);
    const Vec4c vy = by.eval(k);
    inner += w * metric_contraction(vy, vx);
    const Vec4c d = vy - vx;
    dn += w * (std::norm(d(1)) + std::norm(d(2)) + std::norm(d(3)) - std::norm(d(0)));
    da += w * (std::norm(d(0)) + std::norm(d(1)) + std::norm(d(2)) + std::norm(d(3)));
  }
  out.inner_yx = -inner;
  out.diff_norm = dn;
  out.diff_abs = da;
  if (!std::isfinite(out.inner_yx.real()) || !std::isfinite(out.inner_yx.imag()) || !std::isfinite(dn))
    throw std::runtime_error("field not integrable on grid");
  return out;
}

}  // namespace

FieldEvaluator combined_vector(const WeylLabel& label, double eta) {
  return FieldEvaluator::linear_combination(
      {{Complex{1.0, 0.0}, label.a}, {Complex{0.0, eta}, label.psi}});
}

Complex correlation(const CorrelationKernel& kernel, const WeylLabel& x, const WeylLabel& y) {
  const FieldEvaluator bx = combined_vector(x, kernel.eta);
  const FieldEvaluator by = combined_vector(y, kernel.eta);
  if (bx.is_zero() && by.is_zero()) return {1.0, 0.0};
  const PairData p = pair_data(kernel, bx, by);
  if (p.diff_norm < -kernel.tol.negative_norm * std::max(p.diff_abs, 1.0))
    throw std::runtime_error("negative norm: difference vector has negative pairing");
  const Complex phase = std::exp(Complex(0.0, -p.inner_yx.imag() / (2.0 * kernel.eta)));
  return phase * std::exp(-p.diff_norm / (4.0 * kernel.eta));
}

double symplectic_form(const CorrelationKernel& kernel, const WeylLabel& x, const WeylLabel& y) {
  const FieldEvaluator bx = combined_vector(x, kernel.eta);
  const FieldEvaluator by = combined_vector(y, kernel.eta);
  return pseudo_inner(bx, by, kernel.grid).imag() / kernel.eta;
}

double weyl_identity_residual(const CorrelationKernel& kernel, const WeylLabel& x, const WeylLabel& y) {
  const Complex lhs = correlation(kernel, x, y);
  const double s_yx = symplectic_form(kernel, y, x);
  const Complex rhs = std::exp(Complex(0.0, -0.5 * s_yx)) * correlation(kernel, x - y, WeylLabel::vacuum());
  return std::abs(lhs - rhs);
}

Eigen::MatrixXcd gram_matrix(const CorrelationKernel& kernel, std::span<const WeylLabel> labels) {
  const int n = static_cast<int>(labels.size());
  if (n < 1 || n > 32) throw std::invalid_argument("gram_matrix: need between 1 and 32 labels");

  // Sample each combined vector once; pairwise pairings are then direct sums.
  const std::size_t m = kernel.grid.size();
  std::vector<Eigen::Matrix<Complex, Eigen::Dynamic, 4>> samples(n);
  for (int j = 0; j < n; ++j) {
    const FieldEvaluator b = combined_vector(labels[j], kernel.eta);
    samples[j].resize(static_cast<Eigen::Index>(m), 4);
    for (std::size_t i = 0; i < m; ++i) samples[j].row(static_cast<Eigen::Index>(i)) = b.eval(kernel.grid.nodes[i]).transpose();
  }

  Eigen::MatrixXcd inner(n, n);  // inner(j,l) = ⟨B_j|B_l⟩
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      Complex acc{0.0, 0.0};
      for (std::size_t i = 0; i < m; ++i) {
        const double w = kernel.grid.weights[i] / (2.0 * kernel.grid.nodes[i].norm());
        const auto row_j = samples[j].row(static_cast<Eigen::Index>(i));
        const auto row_l = samples[l].row(static_cast<Eigen::Index>(i));
        acc += w * (std::conj(row_j(0)) * row_l(0) - std::conj(row_j(1)) * row_l(1) -
                    std::conj(row_j(2)) * row_l(2) - std::conj(row_j(3)) * row_l(3));
      }
      inner(j, l) = -acc;
    }

  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      const double diff =
          (inner(l, l) + inner(j, j) - inner(l, j) - inner(j, l)).real();
      const Complex phase = std::exp(Complex(0.0, -inner(l, j).imag() / (2.0 * kernel.eta)));
      g(j, l) = phase * std::exp(-diff / (4.0 * kernel.eta));
    }

  // Strip accumulation dust before the eigensolve.
  Eigen::MatrixXcd gs = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gs);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kernel.tol.psd * std::max(norm, 1e-300))
    throw std::runtime_error("positivity violated: Gram matrix has negative eigenvalue");
  return gs;
}

double gram_min_eigenvalue(const Eigen::MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint()));
  return es.eigenvalues().minCoeff();
}

Complex field_op_matrix_element(const CorrelationKernel& kernel, const WeylLabel& y, const FieldEvaluator& chi,
                                const WeylLabel& x) {
  const FieldEvaluator bx = combined_vector(x, kernel.eta);
  const FieldEvaluator by = combined_vector(y, kernel.eta);
  const Complex bracket = pseudo_inner(bx, chi, kernel.grid) + pseudo_inner(chi, by, kernel.grid);
  return 0.5 * bracket * correlation(kernel, x, y);
}

Complex f_op_matrix_element(const CorrelationKernel& kernel, const WeylLabel& y, const FieldEvaluator& d,
                            const WeylLabel& x) {
  const FieldEvaluator bx = combined_vector(x, kernel.eta);
  const FieldEvaluator by = combined_vector(y, kernel.eta);
  const Complex bracket = pseudo_inner(d, by, kernel.grid) - pseudo_inner(bx, d, kernel.grid);
  return Complex{0.0, 1.0 / (2.0 * kernel.eta)} * bracket * correlation(kernel, x, y);
}

double annihilator_vacuum_residual(const CorrelationKernel& kernel, const FieldEvaluator& psi,
                                   std::span<const WeylLabel> probes) {
  if (psi.is_zero()) return 0.0;
  const WeylLabel vac = WeylLabel::vacuum();
  const FieldEvaluator ipsi = psi * I;
  double worst = 0.0;
  for (const auto& y : probes) {
    const Complex r =
        field_op_matrix_element(kernel, y, psi, vac) - I * field_op_matrix_element(kernel, y, ipsi, vac);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

OnePhotonNorm one_photon_norm(const CorrelationKernel& kernel, const FieldEvaluator& psi, double rel_tol) {
  OnePhotonNorm out;
  double bilin = 0.0, proj = 0.0, magnitude = 0.0;
  for (std::size_t j = 0; j < kernel.grid.nodes.size(); ++j) {
    const Vec3& k = kernel.grid.nodes[j];
    const double kn = k.norm();
    const Vec4c v = psi.eval(k);
    const Vec3c s{v(1), v(2), v(3)};
    const double s2 = s.squaredNorm();
    bilin += kernel.grid.weights[j] / (2.0 * kn) * (s2 - std::norm(v(0)));
    const double kd = std::norm(k(0) * s(0) + k(1) * s(1) + k(2) * s(2));
    proj += kernel.grid.weights[j] / (2.0 * kn * kn * kn) * (kn * kn * s2 - kd);
    magnitude += kernel.grid.weights[j] / (2.0 * kn) * s2;
  }
  const double half_eta = 0.5 * kernel.eta;
  out.bilinear_form = half_eta * bilin;
  out.projector_form = half_eta * proj;
  out.value = out.bilinear_form;
  out.magnitude = half_eta * magnitude;
  out.form_mismatch = std::abs(out.bilinear_form - out.projector_form) / std::max(out.magnitude, 1e-300);
  if (out.form_mismatch > rel_tol)
    throw std::runtime_error("form mismatch: one-photon norm routes disagree");
  return out;
}

double one_photon_norm_sq(const CorrelationKernel& kernel, const FieldEvaluator& psi) {
  return one_photon_norm(kernel, psi).value;
}

CcrReport creation_annihilation_ccr_check(const CorrelationKernel& kernel, const FieldEvaluator& psi,
                                          const FieldEvaluator& phi) {
  CcrReport report;
  const FieldEvaluator ipsi = psi * I;
  const FieldEvaluator iphi = phi * I;
  auto commutator = [&](const FieldEvaluator& u, const FieldEvaluator& v) -> Complex {
    // [Â(u), Â(v)] = −i s((0,u);(0,v))
    return -I * symplectic_form(kernel, WeylLabel{FieldEvaluator::zero(), u},
                                WeylLabel{FieldEvaluator::zero(), v});
  };
  auto quad = [&](double s1, double s2) -> Complex {
    // [Â(ψ) + s1 i Â(iψ), Â(φ) + s2 i Â(iφ)] / 4
    return 0.25 * (commutator(psi, phi) + s2 * I * commutator(psi, iphi) + s1 * I * commutator(ipsi, phi) +
                   s1 * s2 * (I * I) * commutator(ipsi, iphi));
  };
  report.create_annihilate_lhs = quad(+1.0, -1.0);
  report.create_annihilate_rhs = -0.5 * kernel.eta * pseudo_inner(psi, phi, kernel.grid);
  report.create_annihilate_residual = std::abs(report.create_annihilate_lhs - report.create_annihilate_rhs);
  report.annihilate_annihilate_residual = std::abs(quad(-1.0, -1.0));
  report.scale =
      positive_norm(psi, kernel.grid) * positive_norm(phi, kernel.grid) * kernel.eta * 0.5 + 1e-300;
  return report;
}

}  // namespace photonkit
