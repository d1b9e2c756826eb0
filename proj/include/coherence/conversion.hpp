#pragma once

#include <vector>

#include "coherence/kraus.hpp"
#include "coherence/states.hpp"

namespace coherence {

struct ConversionQuery {
  BlochVector initial;
  BlochVector target;
  double probability = 1.0;
};

struct SymmetryOp {
  enum class Kind { RotationZ, FlipX, FlipZ };
  enum class Side { Input, Output };
  Kind kind;
  Side side;
  double angle = 0.0;  // RotationZ only
};

// Parameters of the constructive solution, in the reduced frame
// (r_y = s_y = 0, r_x > 0, s_x >= 0, r_z >= 0, s_z >= 0).
struct SynthesisSolution {
  double t = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double mix_weight = 0.0;          // fraction of success weight carried by the tail
  BlochVector incoherent_tail{};    // r = 0
  std::vector<SymmetryOp> applied_symmetries;
};

// Reachability of target from initial at probability p (tolerance 1e-12 in
// favor of reachability). For p below the discontinuity threshold 1-|r_z| the
// cylinder condition is implied by the ellipsoid condition.
bool is_reachable(const ConversionQuery& q);

// Optimal stochastic conversion probability.
double max_conversion_probability(const BlochVector& initial, const BlochVector& target);

// n samples of the boundary of the reachable cross-section in the x-z plane.
// Incoherent initial states yield an empty result.
std::vector<std::pair<double, double>> reachable_boundary(const BlochVector& initial, double p,
                                                          int n);

// Constructs an instrument whose success branch maps `initial` to
// p * target exactly. Throws std::domain_error naming the violated
// inequality when the query is unreachable.
std::pair<SioInstrument, SynthesisSolution> synthesize_instrument(const ConversionQuery& q);

// Trace-distance gap from a target to the reachable ellipsoid of `initial`:
// zero inside, otherwise the distance to the ellipse cross-section.
double ellipsoid_gap(const BlochVector& initial, const BlochVector& target);

// Delta-robustness monotonicity test, any dimension.
bool necessary_sio_condition(const DensityOperator& rho, const DensityOperator& sigma);

// Number of amplitudes with modulus > 1e-12.
int coherence_rank(const std::vector<cx>& amplitudes);

}  // namespace coherence
