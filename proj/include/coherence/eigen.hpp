#pragma once

#include <vector>

#include "coherence/complex_matrix.hpp"

namespace coherence {

// Eigenvalues ascending; column k of `vectors` is the eigenvector for values[k].
// Each eigenvector has its first nonzero component real and positive.
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// Hermitian eigensolver: closed form for dim 2, cyclic Jacobi otherwise.
// Throws std::invalid_argument if M is not Hermitian within tolerance.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

}  // namespace coherence
