#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace coherence {

using cx = std::complex<double>;

// Small dense square complex matrix, row-major. Dimensions in this toolkit
// never exceed 8.
class ComplexMatrix {
 public:
  ComplexMatrix() : dim_(0) {}
  explicit ComplexMatrix(int dim) : dim_(dim), m_(static_cast<size_t>(dim) * dim, cx{0.0, 0.0}) {}
  ComplexMatrix(int dim, std::initializer_list<cx> entries);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  int dim() const { return dim_; }

  cx& operator()(int r, int c) { return m_[static_cast<size_t>(r) * dim_ + c]; }
  const cx& operator()(int r, int c) const { return m_[static_cast<size_t>(r) * dim_ + c]; }

  const std::vector<cx>& data() const { return m_; }

  ComplexMatrix adjoint() const;
  cx trace() const;

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix operator*(cx s) const;
  ComplexMatrix& operator+=(const ComplexMatrix& o);

  // Largest entrywise modulus of (this - o).
  double max_abs_diff(const ComplexMatrix& o) const;
  double max_abs() const;

  bool approx_equal(const ComplexMatrix& o, double tol = 1e-12) const {
    return dim_ == o.dim_ && max_abs_diff(o) <= tol;
  }

  bool is_hermitian(double tol) const;

 private:
  int dim_;
  std::vector<cx> m_;
};

inline ComplexMatrix operator*(cx s, const ComplexMatrix& m) { return m * s; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Pauli matrices and friends.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace coherence
