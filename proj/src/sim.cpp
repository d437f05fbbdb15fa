#include "qevo/sim.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace qevo {

int qubit_count_for_dimension(Eigen::Index dimension) {
  const auto d = static_cast<std::uint64_t>(dimension);
  if (dimension < 2 || !std::has_single_bit(d))
    throw std::invalid_argument("statevector dimension must be a power of two >= 2");
  return std::countr_zero(d);
}

StateVector zero_state(int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be positive");
  StateVector state = StateVector::Zero(Eigen::Index{1} << num_qubits);
  state(0) = Complex{1.0, 0.0};
  return state;
}

Eigen::Matrix2cd single_qubit_matrix(GateKind kind, double angle) {
  using std::cos;
  using std::sin;
  constexpr Complex i{0.0, 1.0};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::Identity:
      m << 1, 0, 0, 1;
      return m;
    case GateKind::H:
    case GateKind::CH:
      m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
      return m;
    case GateKind::X:
    case GateKind::CX:
      m << 0, 1, 1, 0;
      return m;
    case GateKind::Y:
    case GateKind::CY:
      // sign convention: Y|0> = -i|1>, Y|1> = i|0>
      m << 0, i, -i, 0;
      return m;
    case GateKind::Z:
    case GateKind::CZ:
      m << 1, 0, 0, -1;
      return m;
    case GateKind::RX:
    case GateKind::CRX:
      m << cos(angle / 2), -i * sin(angle / 2), -i * sin(angle / 2), cos(angle / 2);
      return m;
    case GateKind::RY:
    case GateKind::CRY:
      m << cos(angle / 2), -sin(angle / 2), sin(angle / 2), cos(angle / 2);
      return m;
    case GateKind::RZ:
    case GateKind::CRZ:
      m << std::exp(-i * (angle / 2)), 0, 0, std::exp(i * (angle / 2));
      return m;
    case GateKind::Oracle:
      break;
  }
  throw std::invalid_argument("no single-qubit matrix for this gate kind");
}

void apply_gate_in_place(Eigen::Ref<StateVector> state, const GateSpec& gate) {
  const int n = qubit_count_for_dimension(state.size());
  validate_gate(gate, n);
  if (gate.kind == GateKind::Identity) return;
  if (gate.kind == GateKind::Oracle)
    throw std::invalid_argument("oracle gate requires an oracle unitary");

  const Eigen::Matrix2cd u = single_qubit_matrix(gate.kind, gate.angle.value_or(0.0));
  const std::uint64_t dim = static_cast<std::uint64_t>(state.size());
  const std::uint64_t target_bit = std::uint64_t{1} << (n - 1 - gate.target);
  const std::uint64_t control_bit =
      gate.control ? std::uint64_t{1} << (n - 1 - *gate.control) : 0;

  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    if (idx & target_bit) continue;  // visit each amplitude pair once
    if (control_bit && !(idx & control_bit)) continue;
    const std::uint64_t partner = idx | target_bit;
    const Complex a0 = state(static_cast<Eigen::Index>(idx));
    const Complex a1 = state(static_cast<Eigen::Index>(partner));
    state(static_cast<Eigen::Index>(idx)) = u(0, 0) * a0 + u(0, 1) * a1;
    state(static_cast<Eigen::Index>(partner)) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

StateVector apply_gate(StateVector state, const GateSpec& gate) {
  apply_gate_in_place(state, gate);
  return state;
}

namespace {

void check_oracle(const UnitaryMatrix* oracle, Eigen::Index dimension) {
  if (!oracle) throw std::invalid_argument("oracle gate without an oracle unitary");
  if (oracle->rows() != dimension || oracle->cols() != dimension)
    throw std::invalid_argument("oracle dimension mismatch");
}

[[noreturn]] void rethrow_at(std::size_t position, const std::exception& e) {
  throw std::invalid_argument("gate " + std::to_string(position) + ": " + e.what());
}

}  // namespace

StateVector run_circuit(const Chromosome& chromosome, int num_qubits,
                        const UnitaryMatrix* oracle_unitary) {
  StateVector state = zero_state(num_qubits);
  for (std::size_t i = 0; i < chromosome.size(); ++i) {
    try {
      if (chromosome[i].kind == GateKind::Oracle) {
        check_oracle(oracle_unitary, state.size());
        state = (*oracle_unitary) * state;
      } else {
        apply_gate_in_place(state, chromosome[i]);
      }
    } catch (const std::invalid_argument& e) {
      rethrow_at(i, e);
    }
  }
  return state;
}

ProbabilityDistribution measure_probabilities(const StateVector& state,
                                              std::span<const int> measured_qubits) {
  const int n = qubit_count_for_dimension(state.size());
  if (measured_qubits.empty())
    throw std::invalid_argument("measured_qubits must not be empty");
  std::uint64_t seen = 0;
  for (int q : measured_qubits) {
    if (q < 0 || q >= n) throw std::invalid_argument("measured qubit out of range");
    if (seen & (std::uint64_t{1} << q))
      throw std::invalid_argument("measured qubits must be distinct");
    seen |= std::uint64_t{1} << q;
  }

  const int k = static_cast<int>(measured_qubits.size());
  ProbabilityDistribution probs = ProbabilityDistribution::Zero(Eigen::Index{1} << k);
  const std::uint64_t dim = static_cast<std::uint64_t>(state.size());
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    std::uint64_t outcome = 0;
    for (int j = 0; j < k; ++j) {
      const std::uint64_t bit = (idx >> (n - 1 - measured_qubits[j])) & 1;
      outcome |= bit << (k - 1 - j);
    }
    probs(static_cast<Eigen::Index>(outcome)) +=
        std::norm(state(static_cast<Eigen::Index>(idx)));
  }
  return probs;
}

UnitaryMatrix extract_unitary(const Chromosome& chromosome, int num_qubits,
                              int start_index, const UnitaryMatrix* oracle_unitary) {
  if (start_index < 0 || start_index > static_cast<int>(chromosome.size()))
    throw std::out_of_range("start_index outside chromosome");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  UnitaryMatrix matrix = UnitaryMatrix::Identity(dim, dim);
  for (std::size_t i = static_cast<std::size_t>(start_index); i < chromosome.size(); ++i) {
    const GateSpec& gate = chromosome[i];
    try {
      if (gate.kind == GateKind::Oracle) {
        check_oracle(oracle_unitary, dim);
        matrix = (*oracle_unitary) * matrix;
      } else if (gate.kind != GateKind::Identity) {
        validate_gate(gate, num_qubits);
        for (Eigen::Index col = 0; col < dim; ++col)
          apply_gate_in_place(matrix.col(col), gate);
      } else {
        validate_gate(gate, num_qubits);
      }
    } catch (const std::invalid_argument& e) {
      rethrow_at(i, e);
    }
  }
  return matrix;
}

UnitaryMatrix gate_unitary(const GateSpec& gate, int num_qubits) {
  return extract_unitary({gate}, num_qubits, 0);
}

}  // namespace qevo
