#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qevo/sim.hpp"

#include <nlohmann/json_fwd.hpp>

namespace qevo {

enum class ProblemKind { BernsteinVazirani, Search };

std::string_view problem_name(ProblemKind problem);

/// One oracle instantiation. `parameter` is the hidden bitstring for
/// Bernstein-Vazirani or the marked index for Search; bit (n-1-q) of the
/// value corresponds to qubit q, so the integer reads like the ket.
struct OracleSpec {
  ProblemKind problem = ProblemKind::Search;
  std::uint64_t parameter = 0;
  int num_qubits = 0;
  UnitaryMatrix unitary;
};

struct TestCase {
  OracleSpec oracle;
  ProbabilityDistribution target;
  std::vector<int> measured_qubits;
};

/// Index of the one-hot peak of a test-case target.
int target_index(const TestCase& test_case);

struct ProblemSuite {
  ProblemKind problem = ProblemKind::Search;
  std::vector<TestCase> test_cases;
  int num_qubits = 0;
  double classical_oracle_calls = 0.0;
};

/// XOR-into-ancilla oracle on n_input_bits + 1 qubits:
/// |x>|a> -> |x>|a xor (s . x mod 2)>. The ancilla is the last qubit.
UnitaryMatrix bv_oracle_unitary(std::uint64_t hidden_string, int n_input_bits);

/// Phase oracle: diagonal with -1 at the marked index, +1 elsewhere.
UnitaryMatrix search_oracle_unitary(std::uint64_t marked_index, int n_qubits);

/// One test case per hidden string in {0,1}^n. Targets are one-hot over
/// the input register (the ancilla is marginalized out). The classical
/// baseline is n oracle calls.
ProblemSuite make_bv_suite(int n_input_bits);

/// One test case per marked index. Targets are one-hot over all qubits.
/// The classical baseline is 2^n / 2 calls.
ProblemSuite make_search_suite(int n_qubits);

/// Suite description (sizes, parameters, targets) for provenance logs.
/// Oracle matrices are not serialized.
nlohmann::json suite_to_json(const ProblemSuite& suite);

}  // namespace qevo
