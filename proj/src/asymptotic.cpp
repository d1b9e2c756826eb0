#include "coherence/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

#include "coherence/conversion.hpp"
#include "coherence/measures.hpp"

namespace coherence {

RateBounds rate_bounds(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != 2 || sigma.dim() != 2)
    throw std::invalid_argument("rate_bounds: qubits only");
  const double cd_s = c_distillable(sigma);
  const double cc_s = c_cost_qubit(sigma);
  if (cd_s <= numeric::tolerance() || cc_s <= numeric::tolerance())
    throw std::domain_error("rate_bounds: undefined for incoherent target");
  const double cd_r = c_distillable(rho);
  const double cc_r = c_cost_qubit(rho);
  const double p = max_conversion_probability(density_to_bloch(rho), density_to_bloch(sigma));
  RateBounds rb;
  rb.lower = std::max(p, cd_r / cc_s);
  rb.upper = std::min(cd_r / cd_s, cc_r / cc_s);
  rb.pinched = std::abs(rb.upper - rb.lower) <= 1e-9;
  return rb;
}

bool unit_rate_certificate(const BlochVector& rho, const BlochVector& sigma) {
  if (!rho.valid() || !sigma.valid())
    throw std::invalid_argument("unit_rate_certificate: invalid Bloch vector");
  const double tol = numeric::tolerance();
  return sigma.rz * sigma.rz <= rho.rz * rho.rz + tol &&
         std::abs(sigma.r() - rho.r()) <= tol;
}

std::pair<double, double> boundary_family_point(double q) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("boundary_family_point: q outside [0,1]");
  const double off = std::abs(2.0 * q - 1.0) / 2.0;  // |sigma_01|
  const double cc = binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * off * off))));
  const double cd = 1.0 - binary_entropy(q);
  return {cc, cd};
}

std::vector<std::pair<double, double>> irreversibility_curve(int n) {
  if (n < 2) throw std::invalid_argument("irreversibility_curve: n must be at least 2");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double q = 0.5 + 0.5 * k / (n - 1);
    pts.push_back(boundary_family_point(q));
  }
  return pts;
}

double irreversibility_floor(double cc) {
  if (cc <= 0.0) return 0.0;
  if (cc >= 1.0) return 1.0;
  // Cc(q) is strictly increasing on [1/2, 1]; invert by bisection.
  double lo = 0.5, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (boundary_family_point(mid).first < cc ? lo : hi) = mid;
  }
  return boundary_family_point(0.5 * (lo + hi)).second;
}

bool region_membership(const DensityOperator& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("region_membership: qubits only");
  const double cc = c_cost_qubit(rho);
  const double cd = c_distillable(rho);
  return irreversibility_floor(cc) <= cd + 1e-9 && cd <= cc + 1e-9;
}

}  // namespace coherence
