#include "coherence/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "coherence/numeric.hpp"

namespace coherence {

namespace {

constexpr double kOffDiagonalThreshold = 1e-14;

void canonicalize_phases(ComplexMatrix& v) {
  const int d = v.dim();
  for (int col = 0; col < d; ++col) {
    for (int row = 0; row < d; ++row) {
      const cx e = v(row, col);
      if (std::abs(e) > 1e-12) {
        const cx phase = std::conj(e) / std::abs(e);
        for (int r = 0; r < d; ++r) v(r, col) *= phase;
        break;
      }
    }
  }
}

EigenSystem eig2(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double b = m(1, 1).real();
  const cx c = m(0, 1);
  const double ac = std::abs(c);
  const double mean = 0.5 * (a + b);
  const double rad = std::hypot(0.5 * (a - b), ac);
  EigenSystem es;
  es.values = {mean - rad, mean + rad};
  es.vectors = ComplexMatrix(2);
  if (ac < 1e-300 && std::abs(a - b) < 1e-300) {
    es.vectors = ComplexMatrix::identity(2);
  } else {
    // Eigenvector for lambda: (c, lambda - a), or (lambda - b, conj(c)) when
    // the first form degenerates.
    for (int k = 0; k < 2; ++k) {
      const double lam = es.values[k];
      cx v0 = c, v1 = cx{lam - a, 0.0};
      const double n1 = std::hypot(std::abs(v0), std::abs(v1));
      cx w0 = cx{lam - b, 0.0}, w1 = std::conj(c);
      const double n2 = std::hypot(std::abs(w0), std::abs(w1));
      if (n2 > n1) {
        v0 = w0;
        v1 = w1;
      }
      const double n = std::hypot(std::abs(v0), std::abs(v1));
      es.vectors(0, k) = v0 / n;
      es.vectors(1, k) = v1 / n;
    }
  }
  canonicalize_phases(es.vectors);
  return es;
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (!m.is_hermitian(numeric::tolerance()))
    throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");
  const int d = m.dim();
  if (d == 1) {
    EigenSystem es;
    es.values = {m(0, 0).real()};
    es.vectors = ComplexMatrix::identity(1);
    return es;
  }
  if (d == 2) return eig2(m);

  // Cyclic Jacobi with complex plane rotations.
  ComplexMatrix a = m;
  // Symmetrize to kill representation noise.
  for (int i = 0; i < d; ++i) {
    a(i, i) = cx{a(i, i).real(), 0.0};
    for (int j = i + 1; j < d; ++j) {
      const cx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(d);

  auto offdiag_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  for (int sweep = 0; sweep < 100 && offdiag_norm() > kOffDiagonalThreshold; ++sweep) {
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) {
        const cx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= kOffDiagonalThreshold * 1e-2) continue;
        const cx phase = apq / mag;  // apq = mag * phase
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Zeroing A'(p,q) needs mag*t^2 - (app-aqq)*t - mag = 0; take the
        // small-magnitude root for stability.
        const double diff = app - aqq;
        const double disc = std::sqrt(diff * diff + 4.0 * mag * mag);
        double t;
        if (diff >= 0.0)
          t = -2.0 * mag / (diff + disc);
        else
          t = 2.0 * mag / (disc - diff);
        const double cth = 1.0 / std::sqrt(1.0 + t * t);
        const double sth = t * cth;
        const cx s_pq = sth * phase;
        // G = [[c, s*phase], [-s*conj(phase), c]] acting on columns p, q.
        for (int k = 0; k < d; ++k) {
          const cx akp = a(k, p), akq = a(k, q);
          a(k, p) = cth * akp - std::conj(s_pq) * akq;
          a(k, q) = s_pq * akp + cth * akq;
        }
        for (int k = 0; k < d; ++k) {
          const cx apk = a(p, k), aqk = a(q, k);
          a(p, k) = cth * apk - s_pq * aqk;
          a(q, k) = std::conj(s_pq) * apk + cth * aqk;
        }
        for (int k = 0; k < d; ++k) {
          const cx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = cth * vkp - std::conj(s_pq) * vkq;
          v(k, q) = s_pq * vkp + cth * vkq;
        }
      }
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es;
  es.values.resize(d);
  es.vectors = ComplexMatrix(d);
  for (int k = 0; k < d; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (int r = 0; r < d; ++r) es.vectors(r, k) = v(r, order[k]);
  }
  canonicalize_phases(es.vectors);
  return es;
}

}  // namespace coherence
