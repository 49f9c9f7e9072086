#include "photonkit/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <variant>

namespace photonkit {

namespace {

inline Complex kdot(const Vec3& k, const Vec3c& s) { return k(0) * s(0) + k(1) * s(1) + k(2) * s(2); }

constexpr double kSqrt2Pi = 2.5066282746310002;  // √(2π)

// Time component and its gradient from spatial data under the constraint
// |k|ψ₀ = Σ k_α ψ_α.
inline Complex complete_time(const Vec3& k, const Vec3c& s) {
  const double kn = k.norm();
  if (kn == 0.0) throw std::domain_error("constraint completion rejects k = 0");
  return kdot(k, s) / kn;
}

inline void complete_time_jet(const Vec3& k, const Vec3c& s, const std::array<Vec3c, 3>& ds, Complex& t,
                              std::array<Complex, 3>& dt) {
  const double kn = k.norm();
  if (kn == 0.0) throw std::domain_error("constraint completion rejects k = 0");
  const Complex ks = kdot(k, s);
  t = ks / kn;
  for (int b = 0; b < 3; ++b) dt[b] = (s(b) + kdot(k, ds[b])) / kn - k(b) * ks / (kn * kn * kn);
}

}  // namespace

Complex ScalarGaussianSum::eval(const Vec3& k) const {
  Complex acc{0.0, 0.0};
  for (const auto& t : terms) acc += t.amp * std::exp(-(k - t.center).squaredNorm() / (2.0 * t.sigma * t.sigma));
  return acc;
}

Vec3c ScalarGaussianSum::gradient(const Vec3& k) const {
  Vec3c acc = Vec3c::Zero();
  for (const auto& t : terms) {
    const Complex g = t.amp * std::exp(-(k - t.center).squaredNorm() / (2.0 * t.sigma * t.sigma));
    const Vec3 d = (k - t.center) / (t.sigma * t.sigma);
    for (int b = 0; b < 3; ++b) acc(b) += -d(b) * g;
  }
  return acc;
}

double TestFunction4D::eval(int mu, const Vec4& q) const {
  double acc = 0.0;
  for (const auto& term : components[mu]) {
    const Vec4 dq = q - term.center;
    double v = term.amp * std::exp(-dq.squaredNorm() / (2.0 * term.tau * term.tau));
    const double phase = term.momentum.dot(q);
    v *= (term.trig == Trig::Cos) ? std::cos(phase) : std::sin(phase);
    if (term.poly_axis >= 0) v *= dq(term.poly_axis);
    acc += v;
  }
  return acc;
}

bool TestFunction4D::is_zero() const {
  for (const auto& c : components)
    if (!c.empty()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Evaluator tree

struct FieldEvaluator::Node {
  struct Zero {};
  struct Packet {
    Vec3c eps;
    Vec3 center;
    double sigma;
    Complex amp;
  };
  struct Sum {
    std::vector<std::pair<Complex, FieldEvaluator>> terms;
  };
  struct Matrix {
    Mat4c m;
    FieldEvaluator inner;
  };
  struct Reparam {
    WaveVectorMap map;
    FieldEvaluator inner;
  };
  struct Phase {
    SpacetimePoint shift;
    FieldEvaluator inner;
  };
  struct SpatialLorenz {
    std::function<Vec3c(const Vec3&)> spatial;
    std::function<std::array<Vec3c, 3>(const Vec3&)> grad;  // may be null
  };
  struct Longitudinal {
    ScalarGaussianSum profile;
  };
  struct RadiationProjected {
    FieldEvaluator inner;
  };
  struct TestFn {
    TestFunction4D f;
  };
  struct Raw {
    std::array<ScalarGaussianSum, 4> comps;
  };

  using Variant =
      std::variant<Zero, Packet, Sum, Matrix, Reparam, Phase, SpatialLorenz, Longitudinal, RadiationProjected, TestFn, Raw>;
  Variant v;
};

namespace {

const std::shared_ptr<const FieldEvaluator::Node>& zero_node() {
  static const auto n = std::make_shared<const FieldEvaluator::Node>(
      FieldEvaluator::Node{FieldEvaluator::Node::Zero{}});
  return n;
}

// Closed-form light-cone Fourier data of one test-function term at w+p and
// w−p, combined per the cos/sin modulation. w = (|k|, −k⃗).
struct TermEval {
  Complex value;
  std::array<Complex, 3> grad;
};

TermEval eval_testfn_term(const TestFunction4D::Term& term, const Vec3& k, bool with_grad) {
  const double kn = k.norm();
  const Vec4 w{kn, -k(0), -k(1), -k(2)};
  const double tau2 = term.tau * term.tau;
  const Complex scale = term.amp * kSqrt2Pi * tau2 * tau2;  // (2π)^{-3/2}·(2π)²·τ⁴

  // ∂w/∂k_β rows
  std::array<Vec4, 3> dw;
  for (int b = 0; b < 3; ++b) {
    dw[b] = Vec4::Zero();
    dw[b](0) = k(b) / kn;
    dw[b](b + 1) = -1.0;
  }

  auto branch = [&](double sign) {
    const Vec4 u = w + sign * term.momentum;
    const Complex envelope = std::exp(Complex(-0.5 * tau2 * u.squaredNorm(), term.center.dot(u)));
    Complex val = envelope;
    if (term.poly_axis >= 0) val *= I * tau2 * u(term.poly_axis);
    std::array<Complex, 3> g{};
    if (with_grad) {
      for (int b = 0; b < 3; ++b) {
        const double uc = term.center.dot(dw[b]);
        const double uu = u.dot(dw[b]);
        Complex de = envelope * Complex(-tau2 * uu, uc);
        if (term.poly_axis >= 0)
          de = I * tau2 * (dw[b](term.poly_axis) * envelope + u(term.poly_axis) * de);
        g[b] = de;
      }
    }
    return TermEval{val, g};
  };

  const TermEval plus = branch(1.0);
  const TermEval minus = branch(-1.0);
  TermEval out;
  if (term.trig == TestFunction4D::Trig::Cos) {
    out.value = scale * 0.5 * (plus.value + minus.value);
    for (int b = 0; b < 3; ++b) out.grad[b] = scale * 0.5 * (plus.grad[b] + minus.grad[b]);
  } else {
    const Complex half_over_i = Complex(0.0, -0.5);
    out.value = scale * half_over_i * (plus.value - minus.value);
    for (int b = 0; b < 3; ++b) out.grad[b] = scale * half_over_i * (plus.grad[b] - minus.grad[b]);
  }
  return out;
}

}  // namespace

FieldEvaluator::FieldEvaluator() : node_(zero_node()) {}

FieldEvaluator FieldEvaluator::zero() { return FieldEvaluator(zero_node()); }

bool FieldEvaluator::is_zero() const { return std::holds_alternative<Node::Zero>(node_->v); }

FieldEvaluator FieldEvaluator::gaussian_packet(const Vec3c& eps, const Vec3& center, double sigma, Complex amp) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_packet: sigma must be positive");
  if (eps.norm() == 0.0 || amp == Complex{0.0, 0.0}) return zero();
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::Packet{eps, center, sigma, amp}}));
}

FieldEvaluator FieldEvaluator::linear_combination(std::vector<std::pair<Complex, FieldEvaluator>> terms) {
  std::vector<std::pair<Complex, FieldEvaluator>> kept;
  for (auto& t : terms)
    if (t.first != Complex{0.0, 0.0} && !t.second.is_zero()) kept.push_back(std::move(t));
  if (kept.empty()) return zero();
  if (kept.size() == 1 && kept[0].first == Complex{1.0, 0.0}) return kept[0].second;
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::Sum{std::move(kept)}}));
}

FieldEvaluator FieldEvaluator::matrix_action(const Mat4c& m, FieldEvaluator inner) {
  if (inner.is_zero()) return zero();
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::Matrix{m, std::move(inner)}}));
}

FieldEvaluator FieldEvaluator::reparameterized(WaveVectorMap map, FieldEvaluator inner) {
  if (inner.is_zero()) return zero();
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::Reparam{std::move(map), std::move(inner)}}));
}

FieldEvaluator FieldEvaluator::phase_modulated(const SpacetimePoint& shift, FieldEvaluator inner) {
  if (inner.is_zero()) return zero();
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::Phase{shift, std::move(inner)}}));
}

FieldEvaluator FieldEvaluator::spatial_lorenz(std::function<Vec3c(const Vec3&)> spatial,
                                              std::function<std::array<Vec3c, 3>(const Vec3&)> spatial_grad) {
  return FieldEvaluator(
      std::make_shared<const Node>(Node{Node::SpatialLorenz{std::move(spatial), std::move(spatial_grad)}}));
}

FieldEvaluator FieldEvaluator::longitudinal(const ScalarGaussianSum& profile) {
  if (profile.empty()) return zero();
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::Longitudinal{profile}}));
}

FieldEvaluator FieldEvaluator::radiation_projected(FieldEvaluator inner) {
  if (inner.is_zero()) return zero();
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::RadiationProjected{std::move(inner)}}));
}

FieldEvaluator FieldEvaluator::from_test_function(const TestFunction4D& f) {
  if (f.is_zero()) return zero();
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::TestFn{f}}));
}

FieldEvaluator FieldEvaluator::raw_components(const std::array<ScalarGaussianSum, 4>& comps) {
  return FieldEvaluator(std::make_shared<const Node>(Node{Node::Raw{comps}}));
}

FieldEvaluator FieldEvaluator::operator+(const FieldEvaluator& o) const {
  return linear_combination({{Complex{1.0, 0.0}, *this}, {Complex{1.0, 0.0}, o}});
}

FieldEvaluator FieldEvaluator::operator-(const FieldEvaluator& o) const {
  return linear_combination({{Complex{1.0, 0.0}, *this}, {Complex{-1.0, 0.0}, o}});
}

FieldEvaluator FieldEvaluator::operator*(Complex c) const { return linear_combination({{c, *this}}); }

Vec4c FieldEvaluator::eval(const Vec3& k) const {
  const Node& n = *node_;
  return std::visit(
      [&](const auto& node) -> Vec4c {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Node::Zero>) {
          return Vec4c::Zero();
        } else if constexpr (std::is_same_v<T, Node::Packet>) {
          const Complex g = node.amp * std::exp(-(k - node.center).squaredNorm() / (2.0 * node.sigma * node.sigma));
          const Vec3c s = node.eps * g;
          Vec4c out;
          out << complete_time(k, s), s(0), s(1), s(2);
          return out;
        } else if constexpr (std::is_same_v<T, Node::Sum>) {
          Vec4c acc = Vec4c::Zero();
          for (const auto& [c, f] : node.terms) acc += c * f.eval(k);
          return acc;
        } else if constexpr (std::is_same_v<T, Node::Matrix>) {
          return node.m * node.inner.eval(k);
        } else if constexpr (std::is_same_v<T, Node::Reparam>) {
          return node.inner.eval(node.map.map(k));
        } else if constexpr (std::is_same_v<T, Node::Phase>) {
          const double theta = k.norm() * node.shift.t - k.dot(node.shift.x);
          return std::exp(I * theta) * node.inner.eval(k);
        } else if constexpr (std::is_same_v<T, Node::SpatialLorenz>) {
          const Vec3c s = node.spatial(k);
          Vec4c out;
          out << complete_time(k, s), s(0), s(1), s(2);
          return out;
        } else if constexpr (std::is_same_v<T, Node::Longitudinal>) {
          const Complex c = node.profile.eval(k);
          const double kn = k.norm();
          Vec4c out;
          out << c, k(0) / kn * c, k(1) / kn * c, k(2) / kn * c;
          return out;
        } else if constexpr (std::is_same_v<T, Node::RadiationProjected>) {
          const Vec4c w = node.inner.eval(k);
          const Vec3c s{w(1), w(2), w(3)};
          const Complex lambda = kdot(k, s) / k.squaredNorm();
          Vec4c out;
          out << Complex{0.0, 0.0}, s(0) - lambda * k(0), s(1) - lambda * k(1), s(2) - lambda * k(2);
          return out;
        } else if constexpr (std::is_same_v<T, Node::TestFn>) {
          Vec4c out;
          for (int mu = 0; mu < 4; ++mu) {
            Complex acc{0.0, 0.0};
            for (const auto& term : node.f.components[mu]) acc += eval_testfn_term(term, k, false).value;
            out(mu) = acc;
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, Node::Raw>);
          Vec4c out;
          for (int mu = 0; mu < 4; ++mu) out(mu) = node.comps[mu].eval(k);
          return out;
        }
      },
      n.v);
}

FieldJet FieldEvaluator::eval_jet(const Vec3& k) const {
  const Node& n = *node_;
  return std::visit(
      [&](const auto& node) -> FieldJet {
        using T = std::decay_t<decltype(node)>;
        FieldJet jet;
        if constexpr (std::is_same_v<T, Node::Zero>) {
          return jet;
        } else if constexpr (std::is_same_v<T, Node::Packet>) {
          const double s2 = node.sigma * node.sigma;
          const Complex g = node.amp * std::exp(-(k - node.center).squaredNorm() / (2.0 * s2));
          const Vec3c s = node.eps * g;
          std::array<Vec3c, 3> ds;
          for (int b = 0; b < 3; ++b) ds[b] = node.eps * (-(k(b) - node.center(b)) / s2 * g);
          Complex t;
          std::array<Complex, 3> dt;
          complete_time_jet(k, s, ds, t, dt);
          jet.value << t, s(0), s(1), s(2);
          for (int b = 0; b < 3; ++b) jet.d[b] << dt[b], ds[b](0), ds[b](1), ds[b](2);
          return jet;
        } else if constexpr (std::is_same_v<T, Node::Sum>) {
          for (const auto& [c, f] : node.terms) {
            const FieldJet inner = f.eval_jet(k);
            jet.value += c * inner.value;
            for (int b = 0; b < 3; ++b) jet.d[b] += c * inner.d[b];
          }
          return jet;
        } else if constexpr (std::is_same_v<T, Node::Matrix>) {
          const FieldJet inner = node.inner.eval_jet(k);
          jet.value = node.m * inner.value;
          for (int b = 0; b < 3; ++b) jet.d[b] = node.m * inner.d[b];
          return jet;
        } else if constexpr (std::is_same_v<T, Node::Reparam>) {
          const Vec3 kp = node.map.map(k);
          const Mat3 jac = node.map.jacobian(k);
          const FieldJet inner = node.inner.eval_jet(kp);
          jet.value = inner.value;
          for (int b = 0; b < 3; ++b) {
            jet.d[b] = Vec4c::Zero();
            for (int a = 0; a < 3; ++a) jet.d[b] += jac(a, b) * inner.d[a];
          }
          return jet;
        } else if constexpr (std::is_same_v<T, Node::Phase>) {
          const double kn = k.norm();
          const double theta = kn * node.shift.t - k.dot(node.shift.x);
          const Complex ph = std::exp(I * theta);
          const FieldJet inner = node.inner.eval_jet(k);
          jet.value = ph * inner.value;
          for (int b = 0; b < 3; ++b) {
            const double dtheta = node.shift.t * k(b) / kn - node.shift.x(b);
            jet.d[b] = ph * (I * dtheta * inner.value + inner.d[b]);
          }
          return jet;
        } else if constexpr (std::is_same_v<T, Node::SpatialLorenz>) {
          const Vec3c s = node.spatial(k);
          std::array<Vec3c, 3> ds;
          if (node.grad) {
            ds = node.grad(k);
          } else {
            // Central differences with a Richardson consistency check.
            const double h = 1e-4 * std::max(1.0, k.norm());
            double worst = 0.0;
            for (int b = 0; b < 3; ++b) {
              Vec3 e = Vec3::Zero();
              e(b) = 1.0;
              const Vec3c d1 = (node.spatial(k + h * e) - node.spatial(k - h * e)) / (2.0 * h);
              const Vec3c d2 = (node.spatial(k + 0.5 * h * e) - node.spatial(k - 0.5 * h * e)) / h;
              const Vec3c rich = (4.0 * d2 - d1) / 3.0;
              worst = std::max(worst, (d2 - rich).norm() / (rich.norm() + 1e-30));
              ds[b] = rich;
            }
            if (worst > 1e-4) throw std::runtime_error("derivative unstable: spatial map gradient");
          }
          Complex t;
          std::array<Complex, 3> dt;
          complete_time_jet(k, s, ds, t, dt);
          jet.value << t, s(0), s(1), s(2);
          for (int b = 0; b < 3; ++b) jet.d[b] << dt[b], ds[b](0), ds[b](1), ds[b](2);
          return jet;
        } else if constexpr (std::is_same_v<T, Node::Longitudinal>) {
          const Complex c = node.profile.eval(k);
          const Vec3c dc = node.profile.gradient(k);
          const double kn = k.norm();
          jet.value << c, k(0) / kn * c, k(1) / kn * c, k(2) / kn * c;
          for (int b = 0; b < 3; ++b) {
            jet.d[b](0) = dc(b);
            for (int a = 0; a < 3; ++a) {
              const double dcoef = (a == b ? 1.0 / kn : 0.0) - k(a) * k(b) / (kn * kn * kn);
              jet.d[b](a + 1) = dcoef * c + k(a) / kn * dc(b);
            }
          }
          return jet;
        } else if constexpr (std::is_same_v<T, Node::RadiationProjected>) {
          const FieldJet inner = node.inner.eval_jet(k);
          const Vec3c s{inner.value(1), inner.value(2), inner.value(3)};
          const double k2 = k.squaredNorm();
          const Complex ks = kdot(k, s);
          const Complex lambda = ks / k2;
          jet.value << Complex{0.0, 0.0}, s(0) - lambda * k(0), s(1) - lambda * k(1), s(2) - lambda * k(2);
          for (int b = 0; b < 3; ++b) {
            const Vec3c dsb{inner.d[b](1), inner.d[b](2), inner.d[b](3)};
            const Complex dlambda = (s(b) + kdot(k, dsb)) / k2 - 2.0 * k(b) * ks / (k2 * k2);
            jet.d[b](0) = Complex{0.0, 0.0};
            for (int a = 0; a < 3; ++a)
              jet.d[b](a + 1) = dsb(a) - dlambda * k(a) - lambda * (a == b ? 1.0 : 0.0);
          }
          return jet;
        } else if constexpr (std::is_same_v<T, Node::TestFn>) {
          for (int mu = 0; mu < 4; ++mu) {
            for (const auto& term : node.f.components[mu]) {
              const TermEval te = eval_testfn_term(term, k, true);
              jet.value(mu) += te.value;
              for (int b = 0; b < 3; ++b) jet.d[b](mu) += te.grad[b];
            }
          }
          return jet;
        } else {
          static_assert(std::is_same_v<T, Node::Raw>);
          for (int mu = 0; mu < 4; ++mu) {
            jet.value(mu) = node.comps[mu].eval(k);
            const Vec3c g = node.comps[mu].gradient(k);
            for (int b = 0; b < 3; ++b) jet.d[b](mu) = g(b);
          }
          return jet;
        }
      },
      n.v);
}

double FieldEvaluator::sup_abs(const MomentumGrid& grid) const {
  double m = 0.0;
  for (const auto& k : grid.nodes) m = std::max(m, eval(k).norm());
  return m;
}

// ---------------------------------------------------------------------------

Complex lorenz_time_component(const Vec3& k, const Vec3c& spatial) { return complete_time(k, spatial); }

FieldEvaluator complete_lorenz(std::function<Vec3c(const Vec3&)> spatial) {
  return FieldEvaluator::spatial_lorenz(std::move(spatial));
}

Complex pseudo_inner(const FieldEvaluator& a, const FieldEvaluator& psi, const MomentumGrid& grid) {
  if (a.is_zero() || psi.is_zero()) return {0.0, 0.0};
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const Vec3& k = grid.nodes[j];
    const Vec4c av = a.eval(k);
    const Vec4c pv = psi.eval(k);
    const Complex contraction =
        std::conj(av(0)) * pv(0) - std::conj(av(1)) * pv(1) - std::conj(av(2)) * pv(2) - std::conj(av(3)) * pv(3);
    acc += grid.weights[j] / (2.0 * k.norm()) * contraction;
  }
  acc = -acc;
  if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
    throw std::runtime_error("field not integrable on grid");
  return acc;
}

Complex pseudo_inner_weighted(const FieldEvaluator& a, const FieldEvaluator& psi, const MomentumGrid& grid,
                              const std::function<double(const Vec3&)>& multiplier) {
  if (a.is_zero() || psi.is_zero()) return {0.0, 0.0};
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const Vec3& k = grid.nodes[j];
    const Vec4c av = a.eval(k);
    const Vec4c pv = psi.eval(k);
    const Complex contraction =
        std::conj(av(0)) * pv(0) - std::conj(av(1)) * pv(1) - std::conj(av(2)) * pv(2) - std::conj(av(3)) * pv(3);
    acc += grid.weights[j] * multiplier(k) / (2.0 * k.norm()) * contraction;
  }
  acc = -acc;
  if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
    throw std::runtime_error("field not integrable on grid");
  return acc;
}

double smeared_field(const FieldEvaluator& a, const FieldEvaluator& psi, const MomentumGrid& grid) {
  return -2.0 * pseudo_inner(a, psi, grid).real();
}

double transverse_norm_sq(const FieldEvaluator& psi, const MomentumGrid& grid) {
  if (psi.is_zero()) return 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const Vec3& k = grid.nodes[j];
    const Vec4c v = psi.eval(k);
    const Vec3c s{v(1), v(2), v(3)};
    const double kn2 = k.squaredNorm();
    const double val = kn2 * s.squaredNorm() - std::norm(kdot(k, s));
    acc += grid.weights[j] * val / (2.0 * kn2 * std::sqrt(kn2));
  }
  if (!std::isfinite(acc)) throw std::runtime_error("field not integrable on grid");
  return acc;
}

double positive_norm(const FieldEvaluator& psi, const MomentumGrid& grid) {
  return std::sqrt(std::max(0.0, transverse_norm_sq(psi, grid)));
}

Vec4 reconstruct_potential(const FieldEvaluator& a, const SpacetimePoint& q, const MomentumGrid& grid,
                           double reality_tol) {
  Vec4c acc = Vec4c::Zero();
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const Vec3& k = grid.nodes[j];
    const double kn = k.norm();
    const Complex spatial_phase = std::exp(I * k.dot(q.x));
    const Complex em = std::exp(-I * q.t * kn);
    const Vec4c pos = a.eval(k);
    const Vec4c neg = a.eval(-k);
    acc += grid.weights[j] / (2.0 * kn) * spatial_phase * (em * pos + std::conj(em) * neg.conjugate());
  }
  acc *= std::pow(2.0 * M_PI, -1.5);
  const double scale = acc.real().matrix().norm();
  const double imag = acc.imag().matrix().norm();
  if (imag > reality_tol * std::max(scale, 1e-300))
    throw std::runtime_error("reality violated in potential reconstruction");
  return acc.real();
}

FieldEvaluator wavefunction_from_testfunction(const TestFunction4D& f) {
  return FieldEvaluator::from_test_function(f);
}

namespace {

// d/dq_ν of a base-family term, expressed inside the family.
void append_derivative(std::vector<TestFunction4D::Term>& out, const TestFunction4D::Term& t, int nu,
                       double coeff) {
  if (t.poly_axis >= 0)
    throw std::invalid_argument("em_smearing_transforms requires base-family test functions");
  TestFunction4D::Term poly = t;
  poly.amp = coeff * (-t.amp / (t.tau * t.tau));
  poly.poly_axis = nu;
  out.push_back(poly);
  if (t.momentum(nu) != 0.0) {
    TestFunction4D::Term trig = t;
    if (t.trig == TestFunction4D::Trig::Cos) {
      trig.amp = coeff * (-t.amp * t.momentum(nu));
      trig.trig = TestFunction4D::Trig::Sin;
    } else {
      trig.amp = coeff * (t.amp * t.momentum(nu));
      trig.trig = TestFunction4D::Trig::Cos;
    }
    out.push_back(trig);
  }
}

}  // namespace

std::pair<TestFunction4D, TestFunction4D> em_smearing_transforms(const TestFunction4D& f) {
  TestFunction4D g, h;
  // g₀ = Σ_α ∂_α f_α, g_α = −∂₀ f_α
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (const auto& t : f.components[alpha]) append_derivative(g.components[0], t, alpha, 1.0);
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (const auto& t : f.components[alpha]) append_derivative(g.components[alpha], t, 0, -1.0);
  // h₀ = 0, h_γ = Σ_{αβ} ε_{αβγ} ∂_β f_α
  static constexpr int eps_idx[6][4] = {{1, 2, 3, 1}, {2, 3, 1, 1}, {3, 1, 2, 1},
                                        {2, 1, 3, -1}, {3, 2, 1, -1}, {1, 3, 2, -1}};
  for (const auto& e : eps_idx) {
    const int alpha = e[0], beta = e[1], gamma = e[2], sign = e[3];
    for (const auto& t : f.components[alpha]) append_derivative(h.components[gamma], t, beta, sign);
  }
  return {g, h};
}

double lorenz_residual(const FieldEvaluator& f, const MomentumGrid& grid) {
  double worst = 0.0;
  for (const auto& k : grid.nodes) {
    const Vec4c v = f.eval(k);
    const Complex r = k.norm() * v(0) - (k(0) * v(1) + k(1) * v(2) + k(2) * v(3));
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace photonkit
