#include "coherence/assisted.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coherence/conversion.hpp"

namespace coherence {

namespace {

ComplexMatrix projector_from_direction(double nx, double ny, double nz) {
  ComplexMatrix p(2);
  p(0, 0) = 0.5 * (1.0 + nz);
  p(1, 1) = 0.5 * (1.0 - nz);
  p(0, 1) = 0.5 * cx{nx, -ny};
  p(1, 0) = 0.5 * cx{nx, ny};
  return p;
}

// Pauli coordinates (c0, cx, cy, cz) with X = c0 I + cx sx + cy sy + cz sz.
std::array<double, 4> pauli_coords(const ComplexMatrix& x) {
  return {0.5 * (x(0, 0) + x(1, 1)).real(), 0.5 * (x(0, 1) + x(1, 0)).real(),
          0.5 * (x(1, 0) - x(0, 1)).imag(), 0.5 * (x(0, 0) - x(1, 1)).real()};
}

ComplexMatrix from_pauli_coords(const std::array<double, 4>& c) {
  ComplexMatrix x(2);
  x(0, 0) = c[0] + c[3];
  x(1, 1) = c[0] - c[3];
  x(0, 1) = cx{c[1], -c[2]};
  x(1, 0) = cx{c[1], c[2]};
  return x;
}

// Tr_A[(M (x) 1) rho] without normalization.
ComplexMatrix steer_raw(const BipartiteState& rho_ab, const ComplexMatrix& m_a) {
  const int da = rho_ab.dim_a(), db = rho_ab.dim_b();
  const auto& rho = rho_ab.state().matrix();
  ComplexMatrix out(db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l) {
      cx sum = 0.0;
      for (int a = 0; a < da; ++a)
        for (int ap = 0; ap < da; ++ap) sum += m_a(a, ap) * rho(ap * db + k, a * db + l);
      out(k, l) = sum;
    }
  return out;
}

bool solve4(double a[4][4], double b[4], double x[4]) {
  int perm[4] = {0, 1, 2, 3};
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[perm[r]][col]) > std::abs(a[perm[piv]][col])) piv = r;
    std::swap(perm[col], perm[piv]);
    const double d = a[perm[col]][col];
    if (std::abs(d) < 1e-13) return false;
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[perm[r]][col] / d;
      for (int c = col; c < 4; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
      b[perm[r]] -= f * b[perm[col]];
    }
  }
  for (int col = 3; col >= 0; --col) {
    double s = b[perm[col]];
    for (int c = col + 1; c < 4; ++c) s -= a[perm[col]][c] * x[c];
    x[col] = s / a[perm[col]][col];
  }
  return true;
}

}  // namespace

double assisted_max_probability(const BlochVector& bob_marginal, const BlochVector& target) {
  if (!bob_marginal.valid() || !target.valid())
    throw std::invalid_argument("assisted_max_probability: invalid Bloch vector");
  const double s = target.r();
  if (s <= 1e-15) return 1.0;
  const double rz = std::abs(bob_marginal.rz);
  const double inner = std::max(0.0, 1.0 - s * s);
  return std::min(1.0, (1.0 - rz) * (1.0 + std::sqrt(inner)) / (s * s));
}

PureDecomposition optimal_pure_decomposition(const BlochVector& rho_b) {
  if (!rho_b.valid()) throw std::invalid_argument("optimal_pure_decomposition: invalid state");
  PureDecomposition dec;
  const double n = rho_b.norm();
  if (n >= 1.0 - numeric::tolerance()) {
    // Pure (or |r_z| = 1) input: the decomposition is the state itself.
    const double scale = n > 1e-15 ? 1.0 / n : 0.0;
    dec.weight_q = 1.0;
    dec.psi1 = {rho_b.rx * scale, rho_b.ry * scale, rho_b.rz * scale};
    if (n <= 1e-15) dec.psi1 = {0.0, 0.0, 1.0};
    dec.psi2 = dec.psi1;
    return dec;
  }
  const double r = rho_b.r();
  const double ring = std::sqrt(std::max(0.0, (1.0 - rho_b.rz) * (1.0 + rho_b.rz)));
  const double beta = std::acos(std::clamp(r / ring, -1.0, 1.0));
  const double phi0 = (r > 1e-15) ? std::atan2(rho_b.ry, rho_b.rx) : 0.0;
  dec.weight_q = 0.5;
  dec.psi1 = {ring * std::cos(phi0 + beta), ring * std::sin(phi0 + beta), rho_b.rz};
  dec.psi2 = {ring * std::cos(phi0 - beta), ring * std::sin(phi0 - beta), rho_b.rz};
  return dec;
}

AliceMeasurement alice_measurement_for(const BipartiteState& purification,
                                       const PureDecomposition& dec) {
  if (purification.dim_a() != 2 || purification.dim_b() != 2)
    throw std::invalid_argument("alice_measurement_for: 2x2 purifications only");
  const DensityOperator rho_b = partial_trace(purification, Subsystem::B);

  // Precondition: the purification marginal matches the decomposed state.
  ComplexMatrix recombined(2);
  recombined += bloch_to_density(dec.psi1).matrix() * cx{dec.weight_q, 0.0};
  recombined += bloch_to_density(dec.psi2).matrix() * cx{1.0 - dec.weight_q, 0.0};
  if (rho_b.matrix().max_abs_diff(recombined) > 1e-8)
    throw std::invalid_argument("alice_measurement_for: marginal does not match decomposition");

  AliceMeasurement meas;
  if (dec.weight_q >= 1.0 - 1e-12 || rho_b.purity() >= 1.0 - 1e-12) {
    // Degenerate steering: any complete measurement works.
    meas.povm_elements = {projector_from_direction(0, 0, 1), projector_from_direction(0, 0, -1)};
    meas.labels = {"psi1", "psi2"};
    return meas;
  }

  // Closed-form steering in the Schmidt basis: with the purification
  // |psi> = sum_i sqrt(mu_i) |i>_A |beta_i>_B, the rank-one element
  // |m><m| with m_i = conj(sqrt(q) <beta_i|phi> / sqrt(mu_i)) conditions
  // Bob onto q |phi><phi| exactly. The amplitude ratios are bounded by
  // 1/sqrt(q), so nothing blows up toward pure marginals.
  const auto es = hermitian_eigensystem(rho_b.matrix());
  const auto phi1 = pure_amplitudes(dec.psi1);
  std::vector<cx> m1(2);
  for (int i = 0; i < 2; ++i) {
    const double mu = std::max(es.values[i], 1e-300);
    cx overlap = 0.0;  // <beta_i|phi1>
    for (int b = 0; b < 2; ++b) overlap += std::conj(es.vectors(b, i)) * phi1[b];
    m1[i] = std::conj(std::sqrt(dec.weight_q) * overlap / std::sqrt(mu));
  }
  ComplexMatrix element(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) element(i, j) = m1[i] * std::conj(m1[j]);
  // The Schmidt-basis element refers to A-components <i|m>; the purification
  // built here carries A exactly in that basis, so no change of frame is
  // needed. Clip float excursions above norm 1.
  const double n2 = std::norm(m1[0]) + std::norm(m1[1]);
  if (n2 > 1.0 + 1e-8)
    throw std::invalid_argument("alice_measurement_for: solved element is not a POVM");
  if (n2 > 1.0) element = element * cx{1.0 / n2, 0.0};
  meas.povm_elements = {element, ComplexMatrix::identity(2) - element};
  meas.labels = {"psi1", "psi2"};
  return meas;
}

std::pair<double, std::optional<DensityOperator>> condition_on_alice(
    const BipartiteState& rho_ab, const ComplexMatrix& m_a) {
  const ComplexMatrix raw = steer_raw(rho_ab, m_a);
  const double p = raw.trace().real();
  if (p <= numeric::tolerance()) return {0.0, std::nullopt};
  return {p, DensityOperator(raw * cx{1.0 / p, 0.0})};
}

double assisted_protocol_simulate(const BipartiteState& purification, const BlochVector& target) {
  if (purification.dim_a() != 2 || purification.dim_b() != 2)
    throw std::invalid_argument("assisted_protocol_simulate: 2x2 states only");
  if (purification.state().purity() < 1.0 - 1e-8)
    throw std::invalid_argument("assisted_protocol_simulate: input must be pure");

  const DensityOperator rho_b = partial_trace(purification, Subsystem::B);
  const auto dec = optimal_pure_decomposition(density_to_bloch(rho_b));
  const auto meas = alice_measurement_for(purification, dec);

  double achieved = 0.0;
  for (const auto& element : meas.povm_elements) {
    const auto [p_i, bob_i] = condition_on_alice(purification, element);
    if (p_i <= 1e-12 || !bob_i) continue;
    const BlochVector branch = density_to_bloch(*bob_i);
    const double p_conv = max_conversion_probability(branch, target);
    if (p_conv <= 0.0) continue;
    const auto [inst, sol] = synthesize_instrument({branch, target, p_conv});
    (void)sol;
    const auto branches = apply_instrument(inst, *bob_i);
    achieved += p_i * branches.front().probability;
  }
  return achieved;
}

BipartiteState werner_state(double q_w) {
  if (q_w < 0.0 || q_w > 1.0) throw std::invalid_argument("werner_state: q_w outside [0,1]");
  ComplexMatrix m(4);
  for (int i = 0; i < 4; ++i) m(i, i) = (1.0 - q_w) / 4.0;
  // |phi+> = (|00> + |11>) / sqrt(2)
  for (int i : {0, 3})
    for (int j : {0, 3}) m(i, j) += 0.5 * q_w;
  return BipartiteState(DensityOperator(std::move(m)), 2, 2);
}

double werner_assisted_probability(const WernerParams& w, const BlochVector& target) {
  if (w.q_w < 0.0 || w.q_w > 1.0)
    throw std::invalid_argument("werner_assisted_probability: q_w outside [0,1]");
  if (!target.valid()) throw std::invalid_argument("werner_assisted_probability: invalid target");
  const double s = target.r();
  if (s <= 1e-15) return 1.0;  // incoherent targets are free, including s_z^2 = 1
  const double denom = std::sqrt(std::max(0.0, 1.0 - target.rz * target.rz));
  return (s * s <= w.q_w * denom + 1e-12) ? 1.0 : 0.0;
}

std::pair<DensityOperator, double> werner_protocol_simulate(const WernerParams& w) {
  const BipartiteState rho_w = werner_state(w.q_w);
  const ComplexMatrix p_plus = projector_from_direction(1, 0, 0);
  const ComplexMatrix p_minus = projector_from_direction(-1, 0, 0);

  const auto [prob_plus, bob_plus] = condition_on_alice(rho_w, p_plus);
  const auto [prob_minus, bob_minus] = condition_on_alice(rho_w, p_minus);

  ComplexMatrix mu(2);
  if (bob_plus) mu += bob_plus->matrix() * cx{prob_plus, 0.0};
  if (bob_minus) {
    const ComplexMatrix corrected = pauli_z() * bob_minus->matrix() * pauli_z();
    mu += corrected * cx{prob_minus, 0.0};
  }
  return {DensityOperator(std::move(mu)), 1.0};
}

bool is_quantum_incoherent(const BipartiteState& rho_ab) {
  const int da = rho_ab.dim_a(), db = rho_ab.dim_b();
  const auto& m = rho_ab.state().matrix();
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      if (i == j) continue;
      for (int a = 0; a < da; ++a)
        for (int b = 0; b < da; ++b)
          if (std::abs(m(a * db + i, b * db + j)) > numeric::tolerance()) return false;
    }
  return true;
}

const std::vector<std::array<double, 3>>& icosphere_directions() {
  static const std::vector<std::array<double, 3>> dirs = [] {
    const double g = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<std::array<double, 3>> verts = {
        {-1, g, 0}, {1, g, 0},   {-1, -g, 0}, {1, -g, 0}, {0, -1, g},  {0, 1, g},
        {0, -1, -g}, {0, 1, -g}, {g, 0, -1},  {g, 0, 1},  {-g, 0, -1}, {-g, 0, 1}};
    const int faces[20][3] = {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                              {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                              {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                              {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    std::vector<std::array<double, 3>> pts;
    auto push_unique = [&](std::array<double, 3> p) {
      const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
      for (auto& c : p) c /= n;
      for (const auto& q : pts)
        if (std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]) + std::abs(p[2] - q[2]) < 1e-9)
          return;
      pts.push_back(p);
    };
    // Frequency-3 geodesic subdivision of each face.
    for (const auto& f : faces)
      for (int i = 0; i <= 3; ++i)
        for (int j = 0; j + i <= 3; ++j) {
          const int k = 3 - i - j;
          std::array<double, 3> p;
          for (int c = 0; c < 3; ++c)
            p[c] = (i * verts[f[0]][c] + j * verts[f[1]][c] + k * verts[f[2]][c]) / 3.0;
          push_unique(p);
        }
    return pts;
  }();
  return dirs;
}

std::optional<AliceMeasurement> correlation_advantage_witness(const BipartiteState& rho_ab) {
  if (rho_ab.dim_a() != 2)
    throw std::invalid_argument("correlation_advantage_witness: Alice must hold a qubit");
  const DensityOperator rho_b = partial_trace(rho_ab, Subsystem::B);
  for (const auto& d : icosphere_directions()) {
    const ComplexMatrix proj = projector_from_direction(d[0], d[1], d[2]);
    const auto [p, conditioned] = condition_on_alice(rho_ab, proj);
    if (p <= 1e-10 || !conditioned) continue;
    if (trace_distance(*conditioned, rho_b) > 1e-8) {
      AliceMeasurement meas;
      meas.povm_elements = {proj, ComplexMatrix::identity(2) - proj};
      meas.labels = {"hit", "rest"};
      return meas;
    }
  }
  return std::nullopt;
}

}  // namespace coherence
