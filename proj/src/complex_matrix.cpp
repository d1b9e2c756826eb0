#include "coherence/complex_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace coherence {

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<cx> entries) : ComplexMatrix(dim) {
  if (static_cast<int>(entries.size()) != dim * dim)
    throw std::invalid_argument("ComplexMatrix: entry count must equal dim^2");
  std::copy(entries.begin(), entries.end(), m_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cx ComplexMatrix::trace() const {
  cx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
  ComplexMatrix r(dim_);
  for (size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] + o.m_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
  ComplexMatrix r(dim_);
  for (size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] - o.m_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const cx a = (*this)(i, k);
      if (a == cx{0.0, 0.0}) continue;
      for (int j = 0; j < dim_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

ComplexMatrix ComplexMatrix::operator*(cx s) const {
  ComplexMatrix r(dim_);
  for (size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] * s;
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (size_t k = 0; k < m_.size(); ++k) m_[k] += o.m_[k];
  return *this;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
  double d = 0.0;
  for (size_t k = 0; k < m_.size(); ++k) d = std::max(d, std::abs(m_[k] - o.m_[k]));
  return d;
}

double ComplexMatrix::max_abs() const {
  double d = 0.0;
  for (const auto& v : m_) d = std::max(d, std::abs(v));
  return d;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const cx v = a(i, j);
      if (v == cx{0.0, 0.0}) continue;
      for (int k = 0; k < b.dim(); ++k)
        for (int l = 0; l < b.dim(); ++l)
          r(i * b.dim() + k, j * b.dim() + l) = v * b(k, l);
    }
  return r;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, cx{0.0, -1.0}, cx{0.0, 1.0}, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

}  // namespace coherence
