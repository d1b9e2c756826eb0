#pragma once

#include <vector>

#include "coherence/states.hpp"

namespace coherence {

struct RateBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool pinched = false;  // lower == upper within 1e-9
};

// lower = max{P(rho->sigma), Cd(rho)/Cc(sigma)},
// upper = min{Cd(rho)/Cd(sigma), Cc(rho)/Cc(sigma)}.
// Throws std::domain_error when sigma is incoherent.
RateBounds rate_bounds(const DensityOperator& rho, const DensityOperator& sigma);

// True iff s_z^2 <= r_z^2 and s = r within 1e-10; a sufficient condition for
// unit asymptotic rate.
bool unit_rate_certificate(const BlochVector& rho, const BlochVector& sigma);

// n samples of (Cc, Cd) along sigma(q) = q |+><+| + (1-q) |-><-|, q in [1/2, 1].
std::vector<std::pair<double, double>> irreversibility_curve(int n);

// Cd of the boundary family at a given coherence cost, solved by bisection
// in q (both coordinates are monotone on [1/2, 1]).
double irreversibility_floor(double cc);

// curve(Cc(rho)) <= Cd(rho) <= Cc(rho) within 1e-9.
bool region_membership(const DensityOperator& rho);

// Cc and Cd of the family state sigma(q).
std::pair<double, double> boundary_family_point(double q);

}  // namespace coherence
