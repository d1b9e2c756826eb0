#include "coherence/measures.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace coherence {

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::L1: return "l1";
    case Measure::Distillable: return "distillable";
    case Measure::Cost: return "cost";
    case Measure::DeltaRobustness: return "delta_robustness";
  }
  return "?";
}

double c_l1(const DensityOperator& rho) {
  double s = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) s += std::abs(rho(i, j));
  return s;
}

double c_distillable(const DensityOperator& rho) {
  return std::max(0.0, von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho));
}

double c_cost_qubit(const DensityOperator& rho) {
  if (rho.dim() != 2)
    throw std::invalid_argument("c_cost_qubit: unsupported dimension (qubits only)");
  const double off = std::abs(rho(0, 1));
  const double inner = std::max(0.0, 1.0 - 4.0 * off * off);
  return binary_entropy(0.5 * (1.0 + std::sqrt(inner)));
}

double c_delta_robustness(const DensityOperator& rho) {
  constexpr double kSupportThreshold = 1e-12;
  const int d = rho.dim();
  std::vector<int> support;
  for (int i = 0; i < d; ++i) {
    if (rho(i, i).real() > kSupportThreshold) {
      support.push_back(i);
    } else {
      // Positivity forces the whole row/column to vanish with the diagonal.
      for (int j = 0; j < d; ++j)
        if (std::abs(rho(i, j)) > numeric::tolerance())
          throw std::invalid_argument("c_delta_robustness: inconsistent zero-diagonal row");
    }
  }
  if (support.empty()) throw std::invalid_argument("c_delta_robustness: zero state");
  const int n = static_cast<int>(support.size());
  ComplexMatrix scaled(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double wa = 1.0 / std::sqrt(rho(support[a], support[a]).real());
      const double wb = 1.0 / std::sqrt(rho(support[b], support[b]).real());
      scaled(a, b) = wa * rho(support[a], support[b]) * wb;
    }
  const auto es = hermitian_eigensystem(scaled);
  return std::max(0.0, es.values.back() - 1.0);
}

double c_delta_robustness_qubit(const BlochVector& b) {
  const double r = b.r();
  const double denom2 = (1.0 - b.rz) * (1.0 + b.rz);
  if (denom2 <= 0.0) {
    if (r > 1e-12)
      throw std::invalid_argument("c_delta_robustness_qubit: invalid Bloch vector");
    return 0.0;
  }
  return r / std::sqrt(denom2);
}

std::vector<MeasureValue> all_measures(const DensityOperator& rho) {
  std::vector<MeasureValue> out = {{Measure::L1, c_l1(rho)},
                                   {Measure::Distillable, c_distillable(rho)},
                                   {Measure::DeltaRobustness, c_delta_robustness(rho)}};
  if (rho.dim() == 2) out.push_back({Measure::Cost, c_cost_qubit(rho)});
  return out;
}

double measure_value(const DensityOperator& rho, Measure m) {
  switch (m) {
    case Measure::L1: return c_l1(rho);
    case Measure::Distillable: return c_distillable(rho);
    case Measure::Cost: return c_cost_qubit(rho);
    case Measure::DeltaRobustness: return c_delta_robustness(rho);
  }
  throw std::logic_error("measure_value: unknown measure");
}

double probability_upper_bound(const DensityOperator& rho, const DensityOperator& sigma,
                               Measure m) {
  const double cs = measure_value(sigma, m);
  if (cs <= numeric::tolerance())
    throw std::domain_error("probability_upper_bound: undefined for incoherent target");
  return std::max(0.0, measure_value(rho, m) / cs);
}

}  // namespace coherence
