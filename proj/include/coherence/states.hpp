#pragma once

#include <utility>

#include "coherence/complex_matrix.hpp"
#include "coherence/eigen.hpp"
#include "coherence/numeric.hpp"

namespace coherence {

// (r_x, r_y, r_z) with r_x^2 + r_y^2 + r_z^2 <= 1.
struct BlochVector {
  double rx = 0.0;
  double ry = 0.0;
  double rz = 0.0;

  // Distance to the incoherent axis.
  double r() const;
  double norm() const;
  bool valid(double tol = numeric::tolerance()) const;
};

// Hermitian, positive semidefinite, unit trace. Validated on construction.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  cx operator()(int r, int c) const { return m_(r, c); }

  double purity() const;

 private:
  ComplexMatrix m_;
};

// Joint state on A (dim d_a) tensor B (dim d_b), A-major indexing.
class BipartiteState {
 public:
  BipartiteState(DensityOperator joint, int d_a, int d_b);

  const DensityOperator& state() const { return joint_; }
  int dim_a() const { return d_a_; }
  int dim_b() const { return d_b_; }

 private:
  DensityOperator joint_;
  int d_a_;
  int d_b_;
};

enum class Subsystem { A, B };

DensityOperator bloch_to_density(const BlochVector& b);
BlochVector density_to_bloch(const DensityOperator& rho);

DensityOperator dephase(const DensityOperator& rho);

// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityOperator& rho);

DensityOperator partial_trace(const BipartiteState& rho, Subsystem keep);

// 2x2 purification of a qubit state; B marginal equals the input.
BipartiteState purify(const DensityOperator& rho);

double trace_distance(const DensityOperator& a, const DensityOperator& b);
// Uhlmann fidelity, squared convention: (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityOperator& a, const DensityOperator& b);

using numeric::binary_entropy;

// z-rotation diag(1, e^{i a}); strictly incoherent unitary.
ComplexMatrix rotation_z(double angle);

DensityOperator maximally_mixed(int dim);
DensityOperator pure_state(const std::vector<cx>& amplitudes);

// Nearest valid state: clip negative eigenvalues, renormalize the trace.
DensityOperator project_to_physical(const ComplexMatrix& hermitian);

}  // namespace coherence
