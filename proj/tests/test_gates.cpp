#include <doctest.h>

#include <algorithm>
#include <array>
#include <numbers>

#include "qevo/gates.hpp"
#include "test_helpers.hpp"

using namespace qevo;

TEST_CASE("kind predicates partition the catalog") {
  const GateKind parameterized[] = {GateKind::RX,  GateKind::RY,  GateKind::RZ,
                                    GateKind::CRX, GateKind::CRY, GateKind::CRZ};
  const GateKind controlled[] = {GateKind::CX,  GateKind::CY,  GateKind::CZ, GateKind::CH,
                                 GateKind::CRX, GateKind::CRY, GateKind::CRZ};
  for (int k = 0; k <= static_cast<int>(GateKind::Oracle); ++k) {
    const GateKind kind = static_cast<GateKind>(k);
    const bool in_param = std::find(std::begin(parameterized), std::end(parameterized),
                                    kind) != std::end(parameterized);
    const bool in_ctrl = std::find(std::begin(controlled), std::end(controlled), kind) !=
                         std::end(controlled);
    CHECK(is_parameterized(kind) == in_param);
    CHECK(is_controlled(kind) == in_ctrl);
  }
}

TEST_CASE("gate names round-trip") {
  for (int k = 0; k <= static_cast<int>(GateKind::Oracle); ++k) {
    const GateKind kind = static_cast<GateKind>(k);
    const auto back = gate_kind_from_name(gate_name(kind));
    REQUIRE(back.has_value());
    CHECK(*back == kind);
  }
  CHECK_FALSE(gate_kind_from_name("ccx").has_value());
}

TEST_CASE("validate_gate rejects malformed gates") {
  CHECK_THROWS_AS(validate_gate({GateKind::H, 3, {}, {}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_gate({GateKind::CX, 1, 1, {}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_gate({GateKind::CX, 1, {}, {}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_gate({GateKind::RX, 0, {}, {}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_gate({GateKind::RX, 0, {}, 4.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_gate({GateKind::H, 0, {}, 1.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_gate({GateKind::H, 0, 1, {}}, 3), std::invalid_argument);
  CHECK_NOTHROW(validate_gate({GateKind::RX, 0, {}, std::numbers::pi}, 3));
  CHECK_NOTHROW(validate_gate({GateKind::Oracle, 0, {}, {}}, 3));
}

TEST_CASE("random_gate with a single identity kind hits every target") {
  RandomStream rng(1);
  std::array<int, 3> target_counts{};
  for (int i = 0; i < 3000; ++i) {
    const GateSpec gate = random_gate(3, {GateKind::Identity}, rng);
    CHECK(gate.kind == GateKind::Identity);
    CHECK_FALSE(gate.control.has_value());
    CHECK_FALSE(gate.angle.has_value());
    ++target_counts[gate.target];
  }
  for (int count : target_counts) CHECK(count > 800);  // ~1000 each
}

TEST_CASE("random_gate CX on two qubits uses both orientations evenly") {
  RandomStream rng(2);
  int forward = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const GateSpec gate = random_gate(2, {GateKind::CX}, rng);
    REQUIRE(gate.control.has_value());
    CHECK(*gate.control != gate.target);
    if (*gate.control == 0) ++forward;
  }
  const double freq = static_cast<double>(forward) / draws;
  CHECK(freq == doctest::Approx(0.5).epsilon(0.1));  // 0.5 +- 0.05
  CHECK(std::abs(freq - 0.5) < 0.05);
}

TEST_CASE("random_gate RX angles are uniform on [-pi, pi]") {
  RandomStream rng(3);
  const int draws = 10000;
  std::vector<double> angles;
  angles.reserve(draws);
  for (int i = 0; i < draws; ++i) {
    const GateSpec gate = random_gate(1, {GateKind::RX}, rng);
    REQUIRE(gate.angle.has_value());
    CHECK(std::abs(*gate.angle) <= std::numbers::pi);
    angles.push_back(*gate.angle);
  }
  std::sort(angles.begin(), angles.end());
  // Kolmogorov-Smirnov statistic against the uniform CDF
  double ks = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double cdf = (angles[i] + std::numbers::pi) / (2 * std::numbers::pi);
    ks = std::max(ks, std::abs(cdf - (i + 1.0) / draws));
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / draws));
  }
  CHECK(ks < 0.02);
}

TEST_CASE("random_gate rejects bad configurations") {
  RandomStream rng(4);
  CHECK_THROWS_AS(random_gate(3, {}, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_gate(1, {GateKind::CX}, rng), std::invalid_argument);
}

TEST_CASE("count_gates ignores identity padding") {
  CHECK(count_gates(Chromosome(10, GateSpec{})) == 0);
  const Chromosome mixed = {circuits::g(GateKind::H, 0), GateSpec{},
                            circuits::cg(GateKind::CX, 0, 1)};
  CHECK(count_gates(mixed) == 2);

  // reference circuit encoded with 4 H, 2 CX, 1 X and 1 oracle gene
  Chromosome bv_like;
  for (int q = 0; q < 4; ++q) bv_like.push_back(circuits::g(GateKind::H, q));
  bv_like.push_back(circuits::g(GateKind::X, 3));
  bv_like.push_back(circuits::cg(GateKind::CX, 0, 3));
  bv_like.push_back(circuits::cg(GateKind::CX, 2, 3));
  bv_like.push_back(circuits::oracle());
  bv_like.resize(15, GateSpec{});
  CHECK(count_gates(bv_like) == 8);
}

TEST_CASE("count_oracle_gates") {
  CHECK(count_oracle_gates(circuits::textbook_bv()) == 1);
  CHECK(count_oracle_gates(Chromosome(5, GateSpec{})) == 0);
  CHECK(count_oracle_gates(circuits::two_oracle_search()) == 2);
  CHECK(count_oracle_gates(circuits::textbook_grover()) == 1);
}

TEST_CASE("gate count identities hold on random chromosomes") {
  RandomStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Chromosome c = circuits::random_chromosome(3, 20, default_gate_set(), rng);
    int identities = 0;
    for (const GateSpec& gene : c)
      if (gene.kind == GateKind::Identity) ++identities;
    CHECK(count_gates(c) + identities == static_cast<int>(c.size()));
    CHECK(count_oracle_gates(c) <= count_gates(c));
  }
}
