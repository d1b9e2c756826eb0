#include "coherence/states.hpp"

#include <cmath>
#include <stdexcept>

namespace coherence {

double BlochVector::r() const { return std::sqrt(rx * rx + ry * ry); }
double BlochVector::norm() const { return std::sqrt(rx * rx + ry * ry + rz * rz); }

bool BlochVector::valid(double tol) const {
  return rx * rx + ry * ry + rz * rz <= 1.0 + tol;
}

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
  const double tol = numeric::tolerance();
  if (m_.dim() < 1) throw std::invalid_argument("DensityOperator: empty matrix");
  if (!m_.is_hermitian(tol)) throw std::invalid_argument("DensityOperator: not Hermitian");
  if (std::abs(m_.trace() - cx{1.0, 0.0}) > tol)
    throw std::invalid_argument("DensityOperator: trace must be 1");
  const auto es = hermitian_eigensystem(m_);
  if (es.values.front() < -tol)
    throw std::invalid_argument("DensityOperator: not positive semidefinite");
}

double DensityOperator::purity() const { return (m_ * m_).trace().real(); }

BipartiteState::BipartiteState(DensityOperator joint, int d_a, int d_b)
    : joint_(std::move(joint)), d_a_(d_a), d_b_(d_b) {
  if (d_a < 1 || d_b < 1 || joint_.dim() != d_a * d_b)
    throw std::invalid_argument("BipartiteState: dimension mismatch");
}

DensityOperator bloch_to_density(const BlochVector& b) {
  if (!b.valid()) throw std::invalid_argument("bloch_to_density: Bloch norm exceeds 1");
  ComplexMatrix m(2);
  m(0, 0) = 0.5 * (1.0 + b.rz);
  m(1, 1) = 0.5 * (1.0 - b.rz);
  m(0, 1) = 0.5 * cx{b.rx, -b.ry};
  m(1, 0) = 0.5 * cx{b.rx, b.ry};
  return DensityOperator(std::move(m));
}

BlochVector density_to_bloch(const DensityOperator& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("density_to_bloch: dimension must be 2");
  BlochVector b;
  b.rx = 2.0 * rho(0, 1).real() + 0.0;
  b.ry = -2.0 * rho(0, 1).imag() + 0.0;
  b.rz = (rho(0, 0) - rho(1, 1)).real() + 0.0;
  return b;
}

DensityOperator dephase(const DensityOperator& rho) {
  ComplexMatrix m(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) m(i, i) = rho(i, i).real();
  return DensityOperator(std::move(m));
}

double von_neumann_entropy(const DensityOperator& rho) {
  const auto es = hermitian_eigensystem(rho.matrix());
  double s = 0.0;
  for (double lam : es.values)
    if (lam > 1e-15) s -= lam * std::log2(lam);
  return std::max(0.0, s);
}

DensityOperator partial_trace(const BipartiteState& rho, Subsystem keep) {
  const int da = rho.dim_a(), db = rho.dim_b();
  const auto& m = rho.state().matrix();
  if (keep == Subsystem::B) {
    ComplexMatrix out(db);
    for (int i = 0; i < db; ++i)
      for (int j = 0; j < db; ++j)
        for (int a = 0; a < da; ++a) out(i, j) += m(a * db + i, a * db + j);
    return DensityOperator(std::move(out));
  }
  ComplexMatrix out(da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int b = 0; b < db; ++b) out(i, j) += m(i * db + b, j * db + b);
  return DensityOperator(std::move(out));
}

BipartiteState purify(const DensityOperator& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("purify: dimension must be 2");
  const auto es = hermitian_eigensystem(rho.matrix());
  // |psi> = sum_i sqrt(mu_i) |i>_A |beta_i>_B
  std::vector<cx> amp(4, cx{0.0, 0.0});
  for (int i = 0; i < 2; ++i) {
    const double mu = std::max(0.0, es.values[i]);
    const double w = std::sqrt(mu);
    for (int b = 0; b < 2; ++b) amp[i * 2 + b] = w * es.vectors(b, i);
  }
  ComplexMatrix m(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = amp[r] * std::conj(amp[c]);
  return BipartiteState(DensityOperator(std::move(m)), 2, 2);
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  const auto es = hermitian_eigensystem(a.matrix() - b.matrix());
  double s = 0.0;
  for (double lam : es.values) s += std::abs(lam);
  return 0.5 * s;
}

namespace {
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  const auto es = hermitian_eigensystem(m);
  ComplexMatrix r(m.dim());
  for (int k = 0; k < m.dim(); ++k) {
    const double w = std::sqrt(std::max(0.0, es.values[k]));
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        r(i, j) += w * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return r;
}
}  // namespace

double fidelity(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const ComplexMatrix sa = matrix_sqrt_psd(a.matrix());
  const ComplexMatrix inner = sa * b.matrix() * sa;
  const auto es = hermitian_eigensystem(inner);
  double s = 0.0;
  for (double lam : es.values) s += std::sqrt(std::max(0.0, lam));
  return numeric::clamp01(s * s);
}

ComplexMatrix rotation_z(double angle) {
  ComplexMatrix u(2);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, angle);
  return u;
}

DensityOperator maximally_mixed(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0 / dim;
  return DensityOperator(std::move(m));
}

DensityOperator pure_state(const std::vector<cx>& amplitudes) {
  const int d = static_cast<int>(amplitudes.size());
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > 1e-8) throw std::invalid_argument("pure_state: not normalized");
  ComplexMatrix m(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = amplitudes[r] * std::conj(amplitudes[c]) / n2;
  return DensityOperator(std::move(m));
}

DensityOperator project_to_physical(const ComplexMatrix& hermitian) {
  const auto es = hermitian_eigensystem(hermitian);
  ComplexMatrix out(hermitian.dim());
  double total = 0.0;
  for (double lam : es.values) total += std::max(0.0, lam);
  if (total <= 0.0) return maximally_mixed(hermitian.dim());
  for (int k = 0; k < hermitian.dim(); ++k) {
    const double w = std::max(0.0, es.values[k]) / total;
    if (w == 0.0) continue;
    for (int i = 0; i < hermitian.dim(); ++i)
      for (int j = 0; j < hermitian.dim(); ++j)
        out(i, j) += w * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return DensityOperator(std::move(out));
}

}  // namespace coherence
