#include "coherence/photonic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "coherence/eigen.hpp"

namespace coherence {

namespace {

std::vector<std::string> labels_for(int n_paths) {
  if (n_paths == 1) return {"e0"};
  if (n_paths == 2) return {"e0", "e1"};
  return {"d0", "d1", "d2", "d3"};
}

int idx(int pol, int path, int n_paths) { return pol * n_paths + path; }

// BD3 recombination pairing: {V d0, H d3} -> e0 and {H d2, V d1} -> e1.
// The other four basis states are unpopulated after H6-H8.
constexpr int kMergeMap[2][4] = {
    // pol = H
    {-1, -1, 1, 0},
    // pol = V
    {0, 1, -1, -1},
};

}  // namespace

bool PathPolState::valid_density(double tol) const {
  if (op.dim() != 2 * n_paths) return false;
  if (!op.is_hermitian(tol)) return false;
  if (std::abs(op.trace() - cx{1.0, 0.0}) > tol) return false;
  const auto es = hermitian_eigensystem(op);
  return es.values.front() >= -tol;
}

std::string OpticalElement::describe() const {
  switch (kind) {
    case Kind::Hwp: return "hwp(" + std::to_string(angle_deg) + ", path " +
                           std::to_string(path) + ")";
    case Kind::BdExpand: return "bd_expand";
    case Kind::BdMerge: return "bd_merge";
    case Kind::PhaseComp: return "phase_comp(path " + std::to_string(path) + ")";
  }
  return "?";
}

ComplexMatrix hwp_action(double angle_deg) {
  const double two_gamma = numeric::deg_to_rad(2.0 * angle_deg);
  ComplexMatrix u(2);
  u(0, 0) = std::cos(two_gamma);
  u(0, 1) = std::sin(two_gamma);
  u(1, 0) = std::sin(two_gamma);
  u(1, 1) = -std::cos(two_gamma);
  return u;
}

PathPolState initial_path_state(const DensityOperator& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("initial_path_state: qubit input required");
  return PathPolState{rho.matrix(), 1, labels_for(1)};
}

PathPolState apply_element(const PathPolState& st, const OpticalElement& el) {
  const int n = st.n_paths;
  switch (el.kind) {
    case OpticalElement::Kind::Hwp: {
      if (el.path < 0 || el.path >= n) throw std::invalid_argument("hwp: bad path index");
      const ComplexMatrix u2 = hwp_action(el.angle_deg);
      ComplexMatrix u(2 * n);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int path = 0; path < n; ++path)
            u(idx(p, path, n), idx(q, path, n)) =
                (path == el.path) ? u2(p, q) : (p == q ? cx{1.0, 0.0} : cx{0.0, 0.0});
      return PathPolState{u * st.op * u.adjoint(), n, st.path_labels};
    }
    case OpticalElement::Kind::PhaseComp: {
      if (el.path < 0 || el.path >= n) throw std::invalid_argument("phase_comp: bad path index");
      ComplexMatrix u = ComplexMatrix::identity(2 * n);
      u(idx(1, el.path, n), idx(1, el.path, n)) = -1.0;
      return PathPolState{u * st.op * u.adjoint(), n, st.path_labels};
    }
    case OpticalElement::Kind::BdExpand: {
      if (n != 1 && n != 2) throw std::invalid_argument("bd_expand: path register full");
      const int m = 2 * n;
      ComplexMatrix out(2 * m);
      // (pol, path) -> (pol, 2 path + pol): an exact polarization-controlled
      // path isometry.
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int pa = 0; pa < n; ++pa)
            for (int pb = 0; pb < n; ++pb)
              out(idx(p, 2 * pa + p, m), idx(q, 2 * pb + q, m)) =
                  st.op(idx(p, pa, n), idx(q, pb, n));
      return PathPolState{std::move(out), m, labels_for(m)};
    }
    case OpticalElement::Kind::BdMerge: {
      if (n != 4) throw std::invalid_argument("bd_merge: expects the 4-path register");
      // Verify the unmapped basis states carry no weight.
      for (int p = 0; p < 2; ++p)
        for (int pa = 0; pa < 4; ++pa)
          if (kMergeMap[p][pa] < 0 &&
              std::abs(st.op(idx(p, pa, 4), idx(p, pa, 4))) > 1e-12)
            throw std::invalid_argument("bd_merge: population outside the recombined paths");
      ComplexMatrix out(4);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int pa = 0; pa < 4; ++pa)
            for (int pb = 0; pb < 4; ++pb) {
              const int ta = kMergeMap[p][pa], tb = kMergeMap[q][pb];
              if (ta < 0 || tb < 0) continue;
              out(idx(p, ta, 2), idx(q, tb, 2)) += st.op(idx(p, pa, 4), idx(q, pb, 4));
            }
      return PathPolState{std::move(out), 2, labels_for(2)};
    }
  }
  throw std::logic_error("apply_element: unknown element");
}

DensityOperator trace_out_paths(const PathPolState& st) {
  const int n = st.n_paths;
  ComplexMatrix out(2);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int path = 0; path < n; ++path) out(p, q) += st.op(idx(p, path, n), idx(q, path, n));
  return DensityOperator(std::move(out));
}

std::vector<OpticalElement> standard_sio_circuit(double theta0_deg, double theta1_deg,
                                                 bool post_z, bool post_x) {
  using K = OpticalElement::Kind;
  std::vector<OpticalElement> circuit = {
      {K::BdExpand, 0.0, -1},
      {K::Hwp, theta0_deg / 2.0, 0},  // H4 on e0
      {K::Hwp, theta1_deg / 2.0, 1},  // H5 on e1
      {K::BdExpand, 0.0, -1},
      {K::Hwp, 45.0, 0},              // H6: bit flip on d0
      {K::Hwp, 0.0, 1},               // H7: sigma_z on d1
      {K::Hwp, 0.0, 2},               // H7: sigma_z on d2
      {K::Hwp, 45.0, 3},              // H8: bit flip on d3
      {K::BdMerge, 0.0, -1},
      {K::Hwp, 45.0, 0},              // H9: bit flip on e0
      {K::PhaseComp, 0.0, 0},         // tilted BD3: sign convention fix
      {K::PhaseComp, 0.0, 1},
  };
  if (post_z) {
    circuit.push_back({K::Hwp, 0.0, 0});  // H10
    circuit.push_back({K::Hwp, 0.0, 1});
  }
  if (post_x) {
    circuit.push_back({K::Hwp, 45.0, 0});  // H11
    circuit.push_back({K::Hwp, 45.0, 1});
  }
  return circuit;
}

std::pair<ComplexMatrix, ComplexMatrix> circuit_kraus(double theta0_deg, double theta1_deg) {
  const double t0 = numeric::deg_to_rad(theta0_deg);
  const double t1 = numeric::deg_to_rad(theta1_deg);
  ComplexMatrix k1(2), k2(2);
  k1(0, 0) = std::cos(t0);
  k1(1, 1) = std::cos(t1);
  k2(0, 1) = std::sin(t1);
  k2(1, 0) = std::sin(t0);
  return {k1, k2};
}

std::pair<PathPolState, DensityOperator> simulate_sio_circuit(double theta0_deg,
                                                              double theta1_deg,
                                                              const DensityOperator& rho) {
  PathPolState st = initial_path_state(rho);
  for (const auto& el : standard_sio_circuit(theta0_deg, theta1_deg)) st = apply_element(st, el);
  DensityOperator rho_f = trace_out_paths(st);
  return {std::move(st), std::move(rho_f)};
}

DensityOperator prepare_single_qubit(double gamma1_deg, double gamma2_deg) {
  const ComplexMatrix u1 = hwp_action(gamma1_deg / 2.0);
  const ComplexMatrix u2 = hwp_action(gamma2_deg / 2.0);
  ComplexMatrix h(2);
  h(0, 0) = 1.0;  // |H><H|
  const DensityOperator rotated(u1 * h * u1.adjoint());
  const DensityOperator dephased = dephase(rotated);
  return DensityOperator(u2 * dephased.matrix() * u2.adjoint());
}

namespace {

ComplexMatrix basis_projector(const std::string& basis, int outcome_sign) {
  ComplexMatrix p(2);
  const double s = outcome_sign > 0 ? 1.0 : -1.0;
  if (basis == "z") {
    p(outcome_sign > 0 ? 0 : 1, outcome_sign > 0 ? 0 : 1) = 1.0;
  } else if (basis == "x") {
    p(0, 0) = 0.5;
    p(1, 1) = 0.5;
    p(0, 1) = 0.5 * s;
    p(1, 0) = 0.5 * s;
  } else if (basis == "y") {
    p(0, 0) = 0.5;
    p(1, 1) = 0.5;
    p(0, 1) = cx{0.0, -0.5 * s};
    p(1, 0) = cx{0.0, 0.5 * s};
  } else {
    throw std::invalid_argument("unknown measurement basis: " + basis);
  }
  return p;
}

}  // namespace

ShotRecord simulate_counts(const std::vector<std::pair<double, DensityOperator>>& branch_states,
                           const std::string& basis, long long n_shots, std::uint64_t seed) {
  if (n_shots <= 0) throw std::invalid_argument("simulate_counts: n_shots must be positive");
  struct Cell {
    std::string label;
    double prob;
  };
  std::vector<Cell> cells;
  for (size_t i = 0; i < branch_states.size(); ++i) {
    const auto& [pb, rho] = branch_states[i];
    for (int sgn : {+1, -1}) {
      const ComplexMatrix proj = basis_projector(basis, sgn);
      const double q = pb * (proj * rho.matrix()).trace().real();
      cells.push_back({"K" + std::to_string(i + 1) + (sgn > 0 ? ":+" : ":-"),
                       std::max(0.0, q)});
    }
  }
  double total = 0.0;
  for (const auto& c : cells) total += c.prob;
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("simulate_counts: branch probabilities must sum to 1");

  std::mt19937_64 eng(seed);
  std::vector<long long> counts(cells.size(), 0);
  for (long long s = 0; s < n_shots; ++s) {
    const double u = (eng() >> 11) * 0x1.0p-53 * total;
    double acc = 0.0;
    size_t pick = cells.size() - 1;
    for (size_t c = 0; c < cells.size(); ++c) {
      acc += cells[c].prob;
      if (u < acc) {
        pick = c;
        break;
      }
    }
    ++counts[pick];
  }

  ShotRecord rec;
  rec.basis = basis;
  rec.n_total = n_shots;
  for (size_t c = 0; c < cells.size(); ++c) rec.counts.emplace_back(cells[c].label, counts[c]);
  return rec;
}

std::pair<double, double> estimate_probability(const ShotRecord& rec,
                                               const std::string& success_branch) {
  if (rec.n_total <= 0) throw std::invalid_argument("estimate_probability: empty record");
  long long n1 = 0;
  for (const auto& [label, count] : rec.counts) {
    if (label == success_branch || label.rfind(success_branch + ":", 0) == 0) n1 += count;
  }
  const double p = static_cast<double>(n1) / static_cast<double>(rec.n_total);
  const double se = std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(rec.n_total)));
  return {p, se};
}

DensityOperator tomography_reconstruct(const std::vector<ShotRecord>& records) {
  double r[3];
  bool have[3] = {false, false, false};
  const std::string names[3] = {"x", "y", "z"};
  for (const auto& rec : records) {
    for (int i = 0; i < 3; ++i) {
      if (rec.basis != names[i]) continue;
      long long plus = 0, minus = 0;
      for (const auto& [label, count] : rec.counts) {
        if (!label.empty() && label.back() == '+') plus += count;
        if (!label.empty() && label.back() == '-') minus += count;
      }
      const long long n = plus + minus;
      if (n <= 0) throw std::invalid_argument("tomography_reconstruct: empty record");
      r[i] = static_cast<double>(plus - minus) / static_cast<double>(n);
      have[i] = true;
    }
  }
  for (int i = 0; i < 3; ++i)
    if (!have[i])
      throw std::invalid_argument("tomography_reconstruct: missing basis " + names[i]);

  ComplexMatrix m(2);
  m(0, 0) = 0.5 * (1.0 + r[2]);
  m(1, 1) = 0.5 * (1.0 - r[2]);
  m(0, 1) = 0.5 * cx{r[0], -r[1]};
  m(1, 0) = 0.5 * cx{r[0], r[1]};
  return project_to_physical(m);
}

}  // namespace coherence
