#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

// Two-element pure-state decomposition of a qubit state; both points sit on
// the Bloch sphere at the z-coordinate of the decomposed state.
struct PureDecomposition {
  double weight_q = 0.5;
  BlochVector psi1{};
  BlochVector psi2{};
};

struct AliceMeasurement {
  std::vector<ComplexMatrix> povm_elements;
  std::vector<std::string> labels;
};

struct WernerParams {
  double q_w = 0.0;
};

// Optimal one-way LQICC probability from a shared pure state with the given
// Bob marginal: min{1, (1 - |r_z|)(1 + sqrt(1 - s^2)) / s^2}.
double assisted_max_probability(const BlochVector& bob_marginal, const BlochVector& target);

// Symmetric (q = 1/2) same-z surface decomposition.
PureDecomposition optimal_pure_decomposition(const BlochVector& rho_b);

// Two-outcome measurement on A steering Bob onto the decomposition branches.
AliceMeasurement alice_measurement_for(const BipartiteState& purification,
                                       const PureDecomposition& dec);

// End-to-end protocol: decomposition, steering measurement, per-branch
// instrument synthesis. Returns the achieved conversion probability.
double assisted_protocol_simulate(const BipartiteState& purification, const BlochVector& target);

BipartiteState werner_state(double q_w);

// Deterministic-or-nothing threshold for Werner-state assisted conversion.
double werner_assisted_probability(const WernerParams& w, const BlochVector& target);

// Alice measures {|+>,|->}; Bob applies the conditional sigma_z correction.
// Returns Bob's state mu_B and the achieved probability (always 1).
std::pair<DensityOperator, double> werner_protocol_simulate(const WernerParams& w);

// True iff every off-diagonal block <i|_B rho |j>_B vanishes.
bool is_quantum_incoherent(const BipartiteState& rho_ab);

// Two-outcome measurement whose conditioned Bob state differs from the
// marginal; empty when the sweep finds none (product states).
std::optional<AliceMeasurement> correlation_advantage_witness(const BipartiteState& rho_ab);

// Conditioned Bob state for an Alice POVM element: (probability, state).
std::pair<double, std::optional<DensityOperator>> condition_on_alice(
    const BipartiteState& rho_ab, const ComplexMatrix& m_a);

// Frequency-3 geodesic sphere directions (92 points).
const std::vector<std::array<double, 3>>& icosphere_directions();

}  // namespace coherence
