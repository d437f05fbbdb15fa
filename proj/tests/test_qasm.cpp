#include <doctest.h>

#include <numbers>

#include "qevo/qasm.hpp"
#include "qevo/sim.hpp"
#include "test_helpers.hpp"

using namespace qevo;

TEST_CASE("to_qasm emits the expected statements") {
  const std::string h = to_qasm({circuits::g(GateKind::H, 0)}, 1);
  CHECK(h.find("OPENQASM 2.0;") != std::string::npos);
  CHECK(h.find("include \"qelib1.inc\";") != std::string::npos);
  CHECK(h.find("qreg q[1];") != std::string::npos);
  CHECK(h.find("h q[0];") != std::string::npos);

  const std::string cx = to_qasm({circuits::cg(GateKind::CX, 0, 1)}, 2);
  CHECK(cx.find("cx q[0],q[1];") != std::string::npos);

  const std::string rx =
      to_qasm({circuits::rg(GateKind::RX, 1, std::numbers::pi / 2)}, 2);
  CHECK(rx.find("rx(1.5707963267948966) q[1];") != std::string::npos);

  const std::string oracle = to_qasm({circuits::oracle()}, 3);
  CHECK(oracle.find("opaque oracle") != std::string::npos);
  CHECK(oracle.find("oracle q[0],q[1],q[2];") != std::string::npos);
}

TEST_CASE("identity padding is dropped on export") {
  Chromosome c(5, GateSpec{});
  c[2] = circuits::g(GateKind::X, 0);
  const std::string text = to_qasm(c, 1);
  CHECK(text.find("id") == std::string::npos);
  const ParsedCircuit parsed = from_qasm(text);
  REQUIRE(parsed.chromosome.size() == 1);
  CHECK(parsed.chromosome[0].kind == GateKind::X);
}

TEST_CASE("from_qasm parses angles in number and pi form") {
  const ParsedCircuit parsed = from_qasm(
      "OPENQASM 2.0;\n"
      "include \"qelib1.inc\";\n"
      "qreg q[2];\n"
      "rx(pi/2) q[0];\n"
      "rz(-pi) q[1];\n"
      "ry(0.25) q[0];\n"
      "crz(2*pi/8) q[0],q[1];\n");
  REQUIRE(parsed.chromosome.size() == 4);
  CHECK(parsed.chromosome[0].angle == doctest::Approx(std::numbers::pi / 2));
  CHECK(parsed.chromosome[1].angle == doctest::Approx(-std::numbers::pi));
  CHECK(parsed.chromosome[2].angle == doctest::Approx(0.25));
  CHECK(parsed.chromosome[3].angle == doctest::Approx(std::numbers::pi / 4));
  CHECK(parsed.chromosome[3].control == 0);
}

TEST_CASE("from_qasm rejects malformed input") {
  CHECK_THROWS_AS(from_qasm("h q[0];"), std::invalid_argument);  // no qreg
  CHECK_THROWS_AS(from_qasm("qreg q[2]; zz q[0];"), std::invalid_argument);
  CHECK_THROWS_AS(from_qasm("qreg q[2]; cx q[0];"), std::invalid_argument);
  CHECK_THROWS_AS(from_qasm("qreg q[2]; rx q[0];"), std::invalid_argument);
  CHECK_THROWS_AS(from_qasm("qreg q[2]; h q[5];"), std::invalid_argument);
}

TEST_CASE("qasm round-trip preserves the circuit unitary") {
  RandomStream rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = uniform_int(rng, 1, 4);
    GateSet set = circuits::oracle_free_gate_set();
    if (n == 1) {
      std::erase_if(set, [](GateKind k) { return is_controlled(k); });
    }
    const Chromosome original = circuits::random_chromosome(n, 10, set, rng);
    const ParsedCircuit parsed = from_qasm(to_qasm(original, n));
    CHECK(parsed.num_qubits == n);
    const UnitaryMatrix before = extract_unitary(original, n, 0);
    const UnitaryMatrix after = extract_unitary(parsed.chromosome, n, 0);
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("oracle genes survive the round-trip") {
  const Chromosome c{circuits::g(GateKind::H, 0), circuits::oracle(),
                     circuits::g(GateKind::H, 1)};
  const ParsedCircuit parsed = from_qasm(to_qasm(c, 3));
  REQUIRE(parsed.chromosome.size() == 3);
  CHECK(parsed.chromosome[1].kind == GateKind::Oracle);
}

TEST_CASE("text diagram lists one line per gene") {
  Chromosome c(3, GateSpec{});
  c[0] = circuits::cg(GateKind::CX, 0, 1);
  c[1] = circuits::oracle();
  const std::string diagram = to_text_diagram(c, 2);
  CHECK(diagram.find("cx q[0] -> q[1]") != std::string::npos);
  CHECK(diagram.find("oracle") != std::string::npos);
  CHECK(diagram.find("id") != std::string::npos);
}
