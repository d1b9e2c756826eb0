#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

enum class KrausKind { Diagonal, Antidiagonal, DestroyTo0, DestroyTo1 };

std::string kraus_kind_name(KrausKind k);

// Structurally constrained qubit Kraus operator. Diagonal and antidiagonal
// kinds are the strictly incoherent unit-rank-pattern operators; destroy
// kinds have exactly one nonzero entry and map everything onto one basis ray.
struct SioKraus {
  KrausKind kind;
  ComplexMatrix m;

  static SioKraus diagonal(cx a, cx b);
  // [[0, top_right], [bottom_left, 0]]
  static SioKraus antidiagonal(cx top_right, cx bottom_left);
  // amp * |target><source|
  static SioKraus destroyer(int target, int source, cx amp);

  bool structurally_valid() const;
};

KrausKind classify_kraus_kind(const ComplexMatrix& m);

// Column test: K|m> proportional to some |n>.
bool is_incoherent_kraus(const ComplexMatrix& k);
// Column and row test: both K and K^dagger incoherent.
bool is_strictly_incoherent_kraus(const ComplexMatrix& k);

struct SioInstrument {
  std::vector<SioKraus> success;
  std::vector<SioKraus> failure;

  // max |sum K^dag K - 1| over entries.
  double completeness_residual() const;
  // Trace non-increasing check for the success branch alone.
  bool success_trace_nonincreasing(double tol = numeric::tolerance()) const;
};

// Diagonal completion c~_i = sqrt(1 - sum_n |c_{i,n}|^2) of a trace
// non-increasing success branch.
SioInstrument complete_instrument(const std::vector<SioKraus>& success);

struct BranchResult {
  std::string branch;  // "success" or "failure"
  double probability;
  std::optional<DensityOperator> state;
};

std::vector<BranchResult> apply_instrument(const SioInstrument& inst, const DensityOperator& rho);

// Unnormalized sum_i K_i rho K_i^dagger over a Kraus list.
ComplexMatrix apply_kraus_sum(const std::vector<SioKraus>& ops, const DensityOperator& rho);

// Per-operator outcomes (probability, normalized state); zero-probability
// outcomes carry no state.
std::vector<std::pair<double, std::optional<DensityOperator>>> apply_kraus_outcomes(
    const std::vector<SioKraus>& ops, const DensityOperator& rho);

// Destroy-kind operators realizing weight w_plus onto |0> and w_minus onto
// |1>. mu0/mu1 are the input-state diagonal masses, u/v the remaining
// column budgets for sources |0>/|1>.
std::vector<SioKraus> destroyer_fill(double mu0, double mu1, double u, double v, double w_plus,
                                     double w_minus);

}  // namespace coherence
