#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coherence/conversion.hpp"
#include "coherence/measures.hpp"
#include "test_util.hpp"

using namespace coherence;
using testutil::Rng;

namespace {

DensityOperator example_rho() {
  return DensityOperator(ComplexMatrix(
      2, {cx{2.0 / 3.0, 0.0}, cx{0.25, 0.0}, cx{0.25, 0.0}, cx{1.0 / 3.0, 0.0}}));
}

DensityOperator plus_state() { return bloch_to_density({1, 0, 0}); }

}  // namespace

TEST_CASE("l1 coherence") {
  CHECK(c_l1(maximally_mixed(2)) == 0.0);
  CHECK(c_l1(plus_state()) == doctest::Approx(1.0));
  CHECK(c_l1(bloch_to_density({1.0 / 3.0, 0.0, 5.0 / 6.0})) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  // Equals the Bloch transverse radius for qubits.
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const BlochVector b = testutil::random_bloch(rng);
    CHECK(std::abs(c_l1(bloch_to_density(b)) - b.r()) <= 1e-12);
  }
}

TEST_CASE("distillable coherence") {
  CHECK(c_distillable(plus_state()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c_distillable(DensityOperator(ComplexMatrix(2, {0.7, 0.0, 0.0, 0.3}))) ==
        doctest::Approx(0.0));
  // h(2/3) - S(rho) with lambda = 1/2 -+ sqrt(13)/12.
  const double rad = std::sqrt(13.0) / 12.0;
  const double s_rho = -[](double x) { return x * std::log2(x); }(0.5 + rad) -
                       [](double x) { return x * std::log2(x); }(0.5 - rad);
  CHECK(c_distillable(example_rho()) ==
        doctest::Approx(0.9182958340544896 - s_rho).epsilon(1e-11));
}

TEST_CASE("qubit coherence cost") {
  CHECK(c_cost_qubit(plus_state()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c_cost_qubit(DensityOperator(ComplexMatrix(2, {0.7, 0.0, 0.0, 0.3}))) == 0.0);
  // |rho01| = 1/4: h((1 + sqrt(3)/2) / 2), evaluated independently.
  const double x = 0.5 * (1.0 + std::sqrt(0.75));
  const double expect = -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
  CHECK(expect == doctest::Approx(0.35457890266527003).epsilon(1e-12));
  CHECK(c_cost_qubit(example_rho()) == doctest::Approx(expect).epsilon(1e-13));
  CHECK_THROWS_AS(c_cost_qubit(maximally_mixed(4)), std::invalid_argument);
}

TEST_CASE("delta robustness") {
  CHECK(c_delta_robustness(plus_state()) == doctest::Approx(1.0).epsilon(1e-10));
  // mu_B with q_w = 0.8245.
  CHECK(c_delta_robustness(bloch_to_density({0.8245, 0, 0})) ==
        doctest::Approx(0.8245).epsilon(1e-10));
  CHECK(c_delta_robustness(bloch_to_density({1.0 / 3.0, 0.0, 5.0 / 6.0})) ==
        doctest::Approx(2.0 / std::sqrt(11.0)).epsilon(1e-10));
  // Support restriction: an embedded qubit inside d = 3 with a zero row.
  ComplexMatrix m3(3);
  m3(0, 0) = 0.6;
  m3(1, 1) = 0.4;
  m3(0, 1) = m3(1, 0) = 0.3;
  CHECK(c_delta_robustness(DensityOperator(std::move(m3))) ==
        doctest::Approx(c_delta_robustness(DensityOperator(
            ComplexMatrix(2, {0.6, 0.3, 0.3, 0.4})))).epsilon(1e-10));
}

TEST_CASE("spectral vs closed-form delta robustness, 1e4 qubits") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const BlochVector b = testutil::random_bloch(rng);
    const double spectral = c_delta_robustness(bloch_to_density(b));
    const double closed = c_delta_robustness_qubit(b);
    CHECK(std::abs(spectral - closed) <= 1e-10);
  }
}

TEST_CASE("all_measures enumerates the quantifiers") {
  Rng rng(21);
  const DensityOperator rho = testutil::random_qubit(rng);
  const auto values = all_measures(rho);
  CHECK(values.size() == 4);
  for (const auto& [name, value] : values) {
    CHECK(value >= 0.0);
    CHECK(value == doctest::Approx(measure_value(rho, name)).epsilon(1e-12));
  }
  // Higher dimensions skip the qubit-only cost.
  CHECK(all_measures(testutil::random_state(rng, 3)).size() == 3);
}

TEST_CASE("probability upper bounds") {
  const DensityOperator rho = bloch_to_density({1.0 / 3.0, 0.0, 5.0 / 6.0});
  const DensityOperator plus = plus_state();
  CHECK(probability_upper_bound(rho, rho, Measure::L1) == doctest::Approx(1.0));
  CHECK(probability_upper_bound(rho, plus, Measure::L1) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(probability_upper_bound(rho, plus, Measure::DeltaRobustness) ==
        doctest::Approx(2.0 / std::sqrt(11.0)).epsilon(1e-9));
  CHECK_THROWS_AS(probability_upper_bound(rho, maximally_mixed(2), Measure::L1),
                  std::domain_error);
}

TEST_CASE("optimal probability below every measure ratio, 1e4 pairs") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const BlochVector r = testutil::random_bloch(rng);
    const BlochVector s = testutil::random_bloch(rng);
    const DensityOperator rho = bloch_to_density(r);
    const DensityOperator sig = bloch_to_density(s);
    if (c_l1(sig) <= 1e-6) continue;
    const double p = max_conversion_probability(r, s);
    for (Measure m : {Measure::L1, Measure::Distillable, Measure::Cost,
                      Measure::DeltaRobustness}) {
      CHECK(p <= probability_upper_bound(rho, sig, m) + 1e-9);
    }
  }
}

TEST_CASE("distillable below cost, equality on pure states") {
  Rng rng(7);
  for (int i = 0; i < 3000; ++i) {
    const DensityOperator rho = testutil::random_qubit(rng);
    CHECK(c_distillable(rho) <= c_cost_qubit(rho) + 1e-10);
  }
  for (int i = 0; i < 500; ++i) {
    const DensityOperator psi = bloch_to_density(testutil::random_bloch_pure(rng));
    CHECK(std::abs(c_distillable(psi) - c_cost_qubit(psi)) <= 1e-7);
  }
}

TEST_CASE("measures vanish on incoherent states and respect diagonal unitaries") {
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    const double z = rng.uniform(-1.0, 1.0);
    const DensityOperator inc = bloch_to_density({0, 0, z});
    CHECK(c_l1(inc) <= 1e-12);
    CHECK(c_distillable(inc) <= 1e-10);
    CHECK(c_cost_qubit(inc) <= 1e-10);
    CHECK(c_delta_robustness(inc) <= 1e-10);
  }
  for (int i = 0; i < 500; ++i) {
    const DensityOperator rho = testutil::random_qubit(rng);
    const ComplexMatrix u = rotation_z(rng.uniform(0.0, 2 * M_PI));
    const DensityOperator rotated(u * rho.matrix() * u.adjoint());
    CHECK(c_l1(rotated) == doctest::Approx(c_l1(rho)).epsilon(1e-11));
    CHECK(c_distillable(rotated) == doctest::Approx(c_distillable(rho)).epsilon(1e-9));
    CHECK(c_cost_qubit(rotated) == doctest::Approx(c_cost_qubit(rho)).epsilon(1e-9));
    CHECK(std::abs(c_delta_robustness(rotated) - c_delta_robustness(rho)) < 1e-9);
  }
}
