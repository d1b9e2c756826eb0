#pragma once

#include <string>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

enum class Measure { L1, Distillable, Cost, DeltaRobustness };

std::string measure_name(Measure m);

// A named quantifier value; distillable coherence and cost are in bits, the
// others dimensionless. Zero exactly on incoherent states.
struct MeasureValue {
  Measure name;
  double value;
};

// All quantifiers applicable to the state (cost is qubit-only).
std::vector<MeasureValue> all_measures(const DensityOperator& rho);

// Sum of off-diagonal moduli; equals the Bloch transverse radius for qubits.
double c_l1(const DensityOperator& rho);

// S(dephase(rho)) - S(rho), in bits.
double c_distillable(const DensityOperator& rho);

// Qubit coherence cost h((1 + sqrt(1 - 4 |rho01|^2)) / 2); throws for d != 2.
double c_cost_qubit(const DensityOperator& rho);

// min{ t >= 0 : rho <= (1 + t) dephase(rho) }, computed spectrally on the
// support of the dephased state.
double c_delta_robustness(const DensityOperator& rho);

// Qubit closed form r / sqrt(1 - r_z^2); used to cross-check the spectral path.
double c_delta_robustness_qubit(const BlochVector& b);

double measure_value(const DensityOperator& rho, Measure m);

// C(rho) / C(sigma); throws std::domain_error when sigma is incoherent.
double probability_upper_bound(const DensityOperator& rho, const DensityOperator& sigma,
                               Measure m);

}  // namespace coherence
