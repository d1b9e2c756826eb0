#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coherence/json_io.hpp"
#include "coherence/states.hpp"
#include "test_util.hpp"

using namespace coherence;
using testutil::Rng;

namespace {

DensityOperator example_rho() {
  return DensityOperator(ComplexMatrix(
      2, {cx{2.0 / 3.0, 0.0}, cx{0.25, 0.0}, cx{0.25, 0.0}, cx{1.0 / 3.0, 0.0}}));
}

// Independent entropy oracle: direct formula for 2x2 diagonals.
double h2(double p) {
  double s = 0.0;
  if (p > 0) s -= p * std::log2(p);
  if (p < 1) s -= (1 - p) * std::log2(1 - p);
  return s;
}

}  // namespace

TEST_CASE("bloch_to_density examples") {
  CHECK(bloch_to_density({0, 0, 0}).matrix().approx_equal(
      ComplexMatrix(2, {0.5, 0.0, 0.0, 0.5})));
  // (1/3, 0, 5/6) -> [[11/12, 1/6], [1/6, 1/12]]
  CHECK(bloch_to_density({1.0 / 3.0, 0.0, 5.0 / 6.0})
            .matrix()
            .approx_equal(ComplexMatrix(2, {cx{11.0 / 12.0, 0.0}, cx{1.0 / 6.0, 0.0},
                                            cx{1.0 / 6.0, 0.0}, cx{1.0 / 12.0, 0.0}})));
  CHECK(bloch_to_density({1, 0, 0}).matrix().approx_equal(
      ComplexMatrix(2, {0.5, 0.5, 0.5, 0.5})));
  CHECK_THROWS_AS(bloch_to_density({0.9, 0.9, 0.9}), std::invalid_argument);
}

TEST_CASE("density_to_bloch examples") {
  const BlochVector b0 = density_to_bloch(maximally_mixed(2));
  CHECK(std::abs(b0.rx) < 1e-15);
  CHECK(std::abs(b0.rz) < 1e-15);

  const BlochVector b1 = density_to_bloch(example_rho());
  CHECK(b1.rx == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b1.ry == doctest::Approx(0.0));
  CHECK(b1.rz == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const BlochVector b2 = density_to_bloch(pure_state({1.0, 0.0}));
  CHECK(b2.rz == doctest::Approx(1.0));

  CHECK_THROWS_AS(density_to_bloch(maximally_mixed(4)), std::invalid_argument);
}

TEST_CASE("dephase examples and idempotence") {
  const DensityOperator plus = bloch_to_density({1, 0, 0});
  CHECK(dephase(plus).matrix().approx_equal(maximally_mixed(2).matrix()));

  const DensityOperator d = dephase(example_rho());
  CHECK(std::abs(d(0, 0).real() - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(d(0, 1)) == 0.0);

  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const DensityOperator rho = testutil::random_qubit(rng);
    // Exact projection on the data model.
    CHECK(dephase(dephase(rho)).matrix().max_abs_diff(dephase(rho).matrix()) == 0.0);
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(pure_state({1.0, 0.0})) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(maximally_mixed(2)) == doctest::Approx(1.0).epsilon(1e-12));
  const DensityOperator diag23(
      ComplexMatrix(2, {cx{2.0 / 3.0, 0.0}, 0.0, 0.0, cx{1.0 / 3.0, 0.0}}));
  CHECK(von_neumann_entropy(diag23) == doctest::Approx(0.9182958340544896).epsilon(1e-12));
  CHECK(h2(2.0 / 3.0) == doctest::Approx(0.9182958340544896).epsilon(1e-14));
}

TEST_CASE("hermitian eigensystem closed form and Jacobi") {
  const auto ez = hermitian_eigensystem(pauli_z());
  CHECK(ez.values[0] == doctest::Approx(-1.0));
  CHECK(ez.values[1] == doctest::Approx(1.0));

  const auto ex = hermitian_eigensystem(pauli_x());
  CHECK(ex.values[0] == doctest::Approx(-1.0));
  CHECK(ex.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(ex.vectors(0, 0)) == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(ex.vectors(1, 1) - ex.vectors(0, 1)) < 1e-12);

  // Quadratic characteristic polynomial of the example state.
  const auto er = hermitian_eigensystem(example_rho().matrix());
  const double rad = std::sqrt(13.0) / 12.0;
  CHECK(er.values[0] == doctest::Approx(0.5 - rad).epsilon(1e-13));
  CHECK(er.values[1] == doctest::Approx(0.5 + rad).epsilon(1e-13));

  CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix(2, {0.0, 1.0, 0.5, 0.0})),
                  std::invalid_argument);

  Rng rng(7);
  for (int d : {2, 3, 4, 8}) {
    for (int rep = 0; rep < 40; ++rep) {
      const DensityOperator rho = testutil::random_state(rng, d);
      const auto es = hermitian_eigensystem(rho.matrix());
      ComplexMatrix recon(d);
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            recon(i, j) += es.values[k] * es.vectors(i, k) * std::conj(es.vectors(j, k));
      CHECK(recon.max_abs_diff(rho.matrix()) < 1e-10);
      for (int k = 1; k < d; ++k) CHECK(es.values[k] >= es.values[k - 1]);
    }
  }
}

TEST_CASE("partial trace") {
  const DensityOperator phi_plus = pure_state({std::sqrt(0.5), 0.0, 0.0, std::sqrt(0.5)});
  const BipartiteState bell(phi_plus, 2, 2);
  CHECK(partial_trace(bell, Subsystem::B).matrix().approx_equal(maximally_mixed(2).matrix()));
  CHECK(partial_trace(bell, Subsystem::A).matrix().approx_equal(maximally_mixed(2).matrix()));

  Rng rng(3);
  const DensityOperator a = testutil::random_qubit(rng);
  const DensityOperator b = testutil::random_qubit(rng);
  const BipartiteState prod(DensityOperator(kron(a.matrix(), b.matrix())), 2, 2);
  CHECK(partial_trace(prod, Subsystem::B).matrix().max_abs_diff(b.matrix()) < 1e-12);
  CHECK(partial_trace(prod, Subsystem::A).matrix().max_abs_diff(a.matrix()) < 1e-12);

  // Werner state marginal: maximally mixed by linearity.
  ComplexMatrix w(4);
  const double qw = 0.37;
  for (int i = 0; i < 4; ++i) w(i, i) = (1.0 - qw) / 4.0;
  for (int i : {0, 3})
    for (int j : {0, 3}) w(i, j) += 0.5 * qw;
  const BipartiteState werner(DensityOperator(std::move(w)), 2, 2);
  CHECK(partial_trace(werner, Subsystem::B)
            .matrix()
            .approx_equal(maximally_mixed(2).matrix(), 1e-12));
}

TEST_CASE("purification") {
  const BipartiteState p_mixed = purify(maximally_mixed(2));
  CHECK(p_mixed.state().purity() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(partial_trace(p_mixed, Subsystem::B)
            .matrix()
            .approx_equal(maximally_mixed(2).matrix(), 1e-10));

  const DensityOperator eq6 = bloch_to_density({1.0 / 3.0, 0.0, 5.0 / 6.0});
  const BipartiteState p6 = purify(eq6);
  CHECK(p6.state().purity() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(partial_trace(p6, Subsystem::B).matrix().max_abs_diff(eq6.matrix()) < 1e-10);

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const DensityOperator rho = testutil::random_qubit(rng);
    const BipartiteState psi = purify(rho);
    CHECK(psi.state().purity() >= 1.0 - 1e-10);
    CHECK(partial_trace(psi, Subsystem::B).matrix().max_abs_diff(rho.matrix()) < 1e-10);
  }
}

TEST_CASE("trace distance, fidelity, binary entropy") {
  Rng rng(17);
  const DensityOperator rho = testutil::random_qubit(rng);
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fidelity(pure_state({1.0, 0.0}), pure_state({0.0, 1.0})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK_THROWS_AS(binary_entropy(1.5), std::invalid_argument);

  for (int i = 0; i < 100; ++i) {
    const DensityOperator a = testutil::random_qubit(rng);
    const DensityOperator b = testutil::random_qubit(rng);
    const double td = trace_distance(a, b);
    const double f = fidelity(a, b);
    CHECK(td >= -1e-12);
    CHECK(td <= 1.0 + 1e-12);
    CHECK(f >= -1e-12);
    CHECK(f <= 1.0 + 1e-12);
    CHECK(trace_distance(b, a) == doctest::Approx(td).epsilon(1e-10));
    CHECK(fidelity(b, a) == doctest::Approx(f).epsilon(1e-8));
  }
}

TEST_CASE("round trip bloch <-> density, 1e4 samples") {
  Rng rng(23);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const BlochVector b = testutil::random_bloch(rng);
    const BlochVector back = density_to_bloch(bloch_to_density(b));
    worst = std::max({worst, std::abs(back.rx - b.rx), std::abs(back.ry - b.ry),
                      std::abs(back.rz - b.rz)});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("entropy never decreases under dephasing") {
  Rng rng(29);
  for (int i = 0; i < 2000; ++i) {
    const DensityOperator rho = testutil::random_qubit(rng);
    CHECK(von_neumann_entropy(dephase(rho)) >= von_neumann_entropy(rho) - 1e-10);
  }
}

TEST_CASE("state JSON round trip") {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const DensityOperator rho = testutil::random_qubit(rng);
    const DensityOperator back = state_from_json(state_to_json(rho));
    CHECK(back.matrix().max_abs_diff(rho.matrix()) < 1e-14);
  }
  const DensityOperator big = testutil::random_state(rng, 4);
  const auto j = nlohmann::json{{"matrix", matrix_to_json(big.matrix())}};
  CHECK(state_from_json(j).matrix().max_abs_diff(big.matrix()) < 1e-15);

  CHECK_THROWS_AS(state_from_json(nlohmann::json{{"oops", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(bloch_from_json(nlohmann::json{{"bloch", {2.0, 0.0, 0.0}}}),
                  std::invalid_argument);
}

TEST_CASE("density operator validation") {
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix(2, {1.0, 0.0, 0.0, 0.5})),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix(2, {1.5, 0.0, 0.0, -0.5})),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix(2, {0.5, 1.0, 0.0, 0.5})),
                  std::invalid_argument);
}
