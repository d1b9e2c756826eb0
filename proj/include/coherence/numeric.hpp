#pragma once

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace coherence::numeric {

inline constexpr double kDefaultTolerance = 1e-10;

namespace detail {
inline std::atomic<double>& tolerance_storage() {
  static std::atomic<double> tol{kDefaultTolerance};
  return tol;
}
}  // namespace detail

// Process-wide absolute tolerance used by all state validations.
inline double tolerance() { return detail::tolerance_storage().load(std::memory_order_relaxed); }

inline void set_tolerance(double tol) {
  detail::tolerance_storage().store(tol, std::memory_order_relaxed);
}

// Binary entropy in bits, with 0 log 0 = 0.
inline double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("binary_entropy: x outside [0,1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

inline double deg_to_rad(double deg) { return deg * M_PI / 180.0; }

}  // namespace coherence::numeric
