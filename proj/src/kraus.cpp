#include "coherence/kraus.hpp"

#include <cmath>
#include <stdexcept>

namespace coherence {

std::string kraus_kind_name(KrausKind k) {
  switch (k) {
    case KrausKind::Diagonal: return "diagonal";
    case KrausKind::Antidiagonal: return "antidiagonal";
    case KrausKind::DestroyTo0: return "destroy-to-0";
    case KrausKind::DestroyTo1: return "destroy-to-1";
  }
  return "?";
}

SioKraus SioKraus::diagonal(cx a, cx b) {
  ComplexMatrix m(2);
  m(0, 0) = a;
  m(1, 1) = b;
  return SioKraus{KrausKind::Diagonal, std::move(m)};
}

SioKraus SioKraus::antidiagonal(cx top_right, cx bottom_left) {
  ComplexMatrix m(2);
  m(0, 1) = top_right;
  m(1, 0) = bottom_left;
  return SioKraus{KrausKind::Antidiagonal, std::move(m)};
}

SioKraus SioKraus::destroyer(int target, int source, cx amp) {
  if (target < 0 || target > 1 || source < 0 || source > 1)
    throw std::invalid_argument("destroyer: indices must be 0 or 1");
  ComplexMatrix m(2);
  m(target, source) = amp;
  return SioKraus{target == 0 ? KrausKind::DestroyTo0 : KrausKind::DestroyTo1, std::move(m)};
}

bool SioKraus::structurally_valid() const {
  if (m.dim() != 2) return false;
  switch (kind) {
    case KrausKind::Diagonal:
      return m(0, 1) == cx{0.0, 0.0} && m(1, 0) == cx{0.0, 0.0};
    case KrausKind::Antidiagonal:
      return m(0, 0) == cx{0.0, 0.0} && m(1, 1) == cx{0.0, 0.0};
    case KrausKind::DestroyTo0:
      return m(1, 0) == cx{0.0, 0.0} && m(1, 1) == cx{0.0, 0.0} &&
             (m(0, 0) == cx{0.0, 0.0}) != (m(0, 1) == cx{0.0, 0.0});
    case KrausKind::DestroyTo1:
      return m(0, 0) == cx{0.0, 0.0} && m(0, 1) == cx{0.0, 0.0} &&
             (m(1, 0) == cx{0.0, 0.0}) != (m(1, 1) == cx{0.0, 0.0});
  }
  return false;
}

KrausKind classify_kraus_kind(const ComplexMatrix& m) {
  if (m.dim() != 2) throw std::invalid_argument("classify_kraus_kind: 2x2 only");
  const bool d0 = m(0, 0) != cx{0.0, 0.0};
  const bool d1 = m(1, 1) != cx{0.0, 0.0};
  const bool a0 = m(0, 1) != cx{0.0, 0.0};
  const bool a1 = m(1, 0) != cx{0.0, 0.0};
  if (!a0 && !a1 && (d0 || d1)) {
    if (d0 && d1) return KrausKind::Diagonal;
    // A single-entry operator maps everything onto one basis ray.
    return d0 ? KrausKind::DestroyTo0 : KrausKind::DestroyTo1;
  }
  if (!d0 && !d1 && (a0 || a1)) {
    if (a0 && a1) return KrausKind::Antidiagonal;
    return a0 ? KrausKind::DestroyTo0 : KrausKind::DestroyTo1;
  }
  if (!d0 && !d1 && !a0 && !a1) return KrausKind::Diagonal;  // zero operator
  throw std::invalid_argument("classify_kraus_kind: matrix is not SIO-structured");
}

bool is_incoherent_kraus(const ComplexMatrix& k) {
  const double tol = numeric::tolerance();
  for (int col = 0; col < k.dim(); ++col) {
    int nonzero = 0;
    for (int row = 0; row < k.dim(); ++row)
      if (std::abs(k(row, col)) > tol) ++nonzero;
    if (nonzero > 1) return false;
  }
  return true;
}

bool is_strictly_incoherent_kraus(const ComplexMatrix& k) {
  if (!is_incoherent_kraus(k)) return false;
  const double tol = numeric::tolerance();
  for (int row = 0; row < k.dim(); ++row) {
    int nonzero = 0;
    for (int col = 0; col < k.dim(); ++col)
      if (std::abs(k(row, col)) > tol) ++nonzero;
    if (nonzero > 1) return false;
  }
  return true;
}

namespace {
ComplexMatrix gram_sum(const std::vector<SioKraus>& ops, int dim) {
  ComplexMatrix s(dim);
  for (const auto& k : ops) s += k.m.adjoint() * k.m;
  return s;
}
}  // namespace

double SioInstrument::completeness_residual() const {
  ComplexMatrix s = gram_sum(success, 2);
  s += gram_sum(failure, 2);
  return s.max_abs_diff(ComplexMatrix::identity(2));
}

bool SioInstrument::success_trace_nonincreasing(double tol) const {
  const ComplexMatrix s = gram_sum(success, 2);
  const auto es = hermitian_eigensystem(s);
  return es.values.back() <= 1.0 + tol;
}

SioInstrument complete_instrument(const std::vector<SioKraus>& success) {
  const ComplexMatrix s = gram_sum(success, 2);
  // For SIO-structured operators the gram sum is diagonal.
  if (std::abs(s(0, 1)) > numeric::tolerance())
    throw std::invalid_argument("complete_instrument: success branch gram sum not diagonal");
  const double c0 = 1.0 - s(0, 0).real();
  const double c1 = 1.0 - s(1, 1).real();
  if (c0 < -numeric::tolerance() || c1 < -numeric::tolerance())
    throw std::invalid_argument("complete_instrument: success branch is trace increasing");
  SioInstrument inst;
  inst.success = success;
  const double a = std::sqrt(std::max(0.0, c0));
  const double b = std::sqrt(std::max(0.0, c1));
  if (a > 1e-15 || b > 1e-15) inst.failure.push_back(SioKraus::diagonal(a, b));
  return inst;
}

ComplexMatrix apply_kraus_sum(const std::vector<SioKraus>& ops, const DensityOperator& rho) {
  ComplexMatrix out(rho.dim());
  for (const auto& k : ops) out += k.m * rho.matrix() * k.m.adjoint();
  return out;
}

std::vector<BranchResult> apply_instrument(const SioInstrument& inst, const DensityOperator& rho) {
  std::vector<BranchResult> out;
  for (const auto& [name, ops] :
       {std::pair{std::string("success"), &inst.success},
        std::pair{std::string("failure"), &inst.failure}}) {
    const ComplexMatrix raw = apply_kraus_sum(*ops, rho);
    const double p = raw.trace().real();
    if (p > numeric::tolerance()) {
      out.push_back({name, p, DensityOperator(raw * cx{1.0 / p, 0.0})});
    } else {
      out.push_back({name, 0.0, std::nullopt});
    }
  }
  return out;
}

std::vector<std::pair<double, std::optional<DensityOperator>>> apply_kraus_outcomes(
    const std::vector<SioKraus>& ops, const DensityOperator& rho) {
  std::vector<std::pair<double, std::optional<DensityOperator>>> out;
  for (const auto& k : ops) {
    const ComplexMatrix raw = k.m * rho.matrix() * k.m.adjoint();
    const double p = raw.trace().real();
    if (p > numeric::tolerance())
      out.emplace_back(p, DensityOperator(raw * cx{1.0 / p, 0.0}));
    else
      out.emplace_back(0.0, std::nullopt);
  }
  return out;
}

std::vector<SioKraus> destroyer_fill(double mu0, double mu1, double u, double v, double w_plus,
                                     double w_minus) {
  const double available = u * mu0 + v * mu1;
  if (w_plus + w_minus > available + 1e-9)
    throw std::logic_error("destroyer_fill: column budget exceeded");
  std::vector<SioKraus> ops;
  // Proportional draw from both columns; each target weight is realized
  // exactly as f * (u mu0 + v mu1). The combined fraction never exceeds 1,
  // so the column budgets hold even when the caller used its slack.
  double remaining = 1.0;
  auto draw = [&](int target, double w) {
    if (w <= 1e-300 || available <= 1e-300) return;
    const double f = std::min(remaining, w / available);
    remaining -= f;
    const double x0 = f * u;
    const double x1 = f * v;
    if (x0 > 1e-300) ops.push_back(SioKraus::destroyer(target, 0, std::sqrt(x0)));
    if (x1 > 1e-300) ops.push_back(SioKraus::destroyer(target, 1, std::sqrt(x1)));
  };
  draw(0, w_plus);
  draw(1, w_minus);
  return ops;
}

}  // namespace coherence
