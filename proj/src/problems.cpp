#include "qevo/problems.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qevo {

std::string_view problem_name(ProblemKind problem) {
  return problem == ProblemKind::BernsteinVazirani ? "bv" : "search";
}

int target_index(const TestCase& test_case) {
  Eigen::Index idx = 0;
  test_case.target.maxCoeff(&idx);
  return static_cast<int>(idx);
}

UnitaryMatrix bv_oracle_unitary(std::uint64_t hidden_string, int n_input_bits) {
  if (n_input_bits < 1) throw std::invalid_argument("n_input_bits must be positive");
  if (hidden_string >> n_input_bits)
    throw std::invalid_argument("hidden string out of range");
  const int n = n_input_bits + 1;  // inputs plus ancilla (last qubit)
  const Eigen::Index dim = Eigen::Index{1} << n;
  UnitaryMatrix u = UnitaryMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const std::uint64_t x = static_cast<std::uint64_t>(col) >> 1;
    const std::uint64_t ancilla = static_cast<std::uint64_t>(col) & 1;
    const std::uint64_t fx = static_cast<std::uint64_t>(std::popcount(hidden_string & x)) & 1;
    const Eigen::Index row = static_cast<Eigen::Index>((x << 1) | (ancilla ^ fx));
    u(row, col) = Complex{1.0, 0.0};
  }
  return u;
}

UnitaryMatrix search_oracle_unitary(std::uint64_t marked_index, int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be positive");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (marked_index >= static_cast<std::uint64_t>(dim))
    throw std::invalid_argument("marked index out of range");
  UnitaryMatrix u = UnitaryMatrix::Identity(dim, dim);
  u(static_cast<Eigen::Index>(marked_index), static_cast<Eigen::Index>(marked_index)) =
      Complex{-1.0, 0.0};
  return u;
}

ProblemSuite make_bv_suite(int n_input_bits) {
  if (n_input_bits < 1) throw std::invalid_argument("n_input_bits must be >= 1");
  ProblemSuite suite;
  suite.problem = ProblemKind::BernsteinVazirani;
  suite.num_qubits = n_input_bits + 1;
  suite.classical_oracle_calls = static_cast<double>(n_input_bits);

  std::vector<int> measured(n_input_bits);
  std::iota(measured.begin(), measured.end(), 0);

  const std::uint64_t cases = std::uint64_t{1} << n_input_bits;
  suite.test_cases.reserve(cases);
  for (std::uint64_t s = 0; s < cases; ++s) {
    TestCase tc;
    tc.oracle = OracleSpec{ProblemKind::BernsteinVazirani, s, suite.num_qubits,
                           bv_oracle_unitary(s, n_input_bits)};
    tc.target = ProbabilityDistribution::Zero(static_cast<Eigen::Index>(cases));
    tc.target(static_cast<Eigen::Index>(s)) = 1.0;
    tc.measured_qubits = measured;
    suite.test_cases.push_back(std::move(tc));
  }
  return suite;
}

ProblemSuite make_search_suite(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("n_qubits must be >= 2");
  ProblemSuite suite;
  suite.problem = ProblemKind::Search;
  suite.num_qubits = n_qubits;
  const std::uint64_t cases = std::uint64_t{1} << n_qubits;
  suite.classical_oracle_calls = static_cast<double>(cases) / 2.0;

  std::vector<int> measured(n_qubits);
  std::iota(measured.begin(), measured.end(), 0);

  suite.test_cases.reserve(cases);
  for (std::uint64_t m = 0; m < cases; ++m) {
    TestCase tc;
    tc.oracle = OracleSpec{ProblemKind::Search, m, n_qubits,
                           search_oracle_unitary(m, n_qubits)};
    tc.target = ProbabilityDistribution::Zero(static_cast<Eigen::Index>(cases));
    tc.target(static_cast<Eigen::Index>(m)) = 1.0;
    tc.measured_qubits = measured;
    suite.test_cases.push_back(std::move(tc));
  }
  return suite;
}

nlohmann::json suite_to_json(const ProblemSuite& suite) {
  nlohmann::json cases = nlohmann::json::array();
  for (const TestCase& tc : suite.test_cases) {
    cases.push_back({{"parameter", tc.oracle.parameter},
                     {"target_index", target_index(tc)},
                     {"measured_qubits", tc.measured_qubits}});
  }
  return {{"problem", problem_name(suite.problem)},
          {"num_qubits", suite.num_qubits},
          {"classical_oracle_calls", suite.classical_oracle_calls},
          {"num_test_cases", suite.test_cases.size()},
          {"test_cases", std::move(cases)}};
}

}  // namespace qevo
