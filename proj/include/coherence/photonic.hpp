#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

// Polarization (2) tensor path (1, 2, or 4) register, polarization-major
// indexing: index = pol * n_paths + path.
struct PathPolState {
  ComplexMatrix op;
  int n_paths = 1;
  std::vector<std::string> path_labels;

  bool valid_density(double tol = numeric::tolerance()) const;
};

struct OpticalElement {
  enum class Kind { Hwp, BdExpand, BdMerge, PhaseComp };
  Kind kind;
  double angle_deg = 0.0;  // Hwp only
  int path = -1;           // Hwp / PhaseComp

  std::string describe() const;
};

// Half-wave plate at fast-axis angle gamma (degrees):
// [[cos 2g, sin 2g], [sin 2g, -cos 2g]].
ComplexMatrix hwp_action(double angle_deg);

PathPolState initial_path_state(const DensityOperator& rho);
PathPolState apply_element(const PathPolState& st, const OpticalElement& el);
DensityOperator trace_out_paths(const PathPolState& st);

// BD1 -> H4/H5 -> BD2 -> H6/H7/H8 -> BD3 -> H9 -> phase compensation.
// Optional trailing correction plates act on both output arms: post_z
// (plate at 0 degrees) flips the transverse sign of every branch output,
// post_x (plate at 45 degrees) flips the z sign.
std::vector<OpticalElement> standard_sio_circuit(double theta0_deg, double theta1_deg,
                                                 bool post_z = false, bool post_x = false);

// Kraus pair realized by the circuit: K1 = diag(cos t0, cos t1),
// K2 = [[0, sin t1], [sin t0, 0]].
std::pair<ComplexMatrix, ComplexMatrix> circuit_kraus(double theta0_deg, double theta1_deg);

// Runs the element sequence; returns the final path-resolved state and its
// polarization marginal.
std::pair<PathPolState, DensityOperator> simulate_sio_circuit(double theta0_deg,
                                                              double theta1_deg,
                                                              const DensityOperator& rho);

// Polarization rotation by gamma1, full dephasing, rotation by gamma2.
// Bloch result: (cos 2g1 sin 2g2, 0, cos 2g1 cos 2g2). The physical plates
// sit at half the given angles.
DensityOperator prepare_single_qubit(double gamma1_deg, double gamma2_deg);

struct ShotRecord {
  std::string basis;  // "x", "y", or "z"
  std::vector<std::pair<std::string, long long>> counts;  // "K<i>:+" style labels
  long long n_total = 0;
};

// Multinomial draw over (branch x outcome) cells; deterministic per seed.
ShotRecord simulate_counts(const std::vector<std::pair<double, DensityOperator>>& branch_states,
                           const std::string& basis, long long n_shots, std::uint64_t seed);

// (N1/N_total, binomial standard error); N1 sums the given branch's counts.
std::pair<double, double> estimate_probability(const ShotRecord& rec,
                                               const std::string& success_branch = "K1");

// Linear inversion from per-Pauli-basis records, projected to the nearest
// physical state.
DensityOperator tomography_reconstruct(const std::vector<ShotRecord>& records);

}  // namespace coherence
