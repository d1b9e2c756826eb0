#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coherence/conversion.hpp"
#include "coherence/kraus.hpp"

namespace coherence {

struct OracleConfig {
  int grid_resolution = 64;  // per parameter, >= 8
  int random_samples = 2000;
  std::uint64_t seed = 0;
  double target_tolerance = 0.01;  // trace distance for target matching
};

// Deterministic portable uniforms on top of the (fully specified) mt19937_64.
class OracleRng {
 public:
  explicit OracleRng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return (eng_() >> 11) * 0x1.0p-53; }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Random trace-non-increasing success branch in the four-operator form,
// completed to a full instrument.
SioInstrument sample_sio_instrument(OracleRng& rng, bool include_destroyers);

// Brute-force maximum success probability over the (t, theta, phi) grid
// augmented with destroy-branch weights, among instruments whose success
// output lies within target_tolerance (trace distance) of the target.
double oracle_max_probability(const BlochVector& initial, const BlochVector& target,
                              const OracleConfig& cfg);

struct ReachablePoint {
  double sx, sz, achieved_p;
};

// Point cloud of success outputs achievable with probability >= p - tol.
std::vector<ReachablePoint> oracle_reachable_set(const BlochVector& initial, double p,
                                                 const OracleConfig& cfg);

}  // namespace coherence
