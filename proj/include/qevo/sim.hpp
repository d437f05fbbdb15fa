#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "qevo/gates.hpp"

namespace qevo {

using Complex = std::complex<double>;

/// 2^n complex amplitudes. Qubit 0 is the most significant bit of the
/// basis-state index, i.e. |q0 q1 ... q_{n-1}> reads left to right.
using StateVector = Eigen::VectorXcd;

/// 2^n x 2^n complex matrix with U * U^dagger = I.
using UnitaryMatrix = Eigen::MatrixXcd;

/// Non-negative entries summing to 1.
using ProbabilityDistribution = Eigen::VectorXd;

/// Number of qubits for a statevector dimension; throws unless the
/// dimension is a power of two >= 2.
int qubit_count_for_dimension(Eigen::Index dimension);

/// |00...0> on `num_qubits` qubits.
StateVector zero_state(int num_qubits);

/// The 2x2 action of a gate kind on its target qubit (for controlled
/// kinds, the controlled block). Throws for Identity-only placeholders
/// that have no such matrix (Oracle).
Eigen::Matrix2cd single_qubit_matrix(GateKind kind, double angle = 0.0);

/// Applies one elementary gate in place. Oracle genes are rejected here;
/// they only make sense inside run_circuit / extract_unitary where an
/// oracle unitary is available.
void apply_gate_in_place(Eigen::Ref<StateVector> state, const GateSpec& gate);

StateVector apply_gate(StateVector state, const GateSpec& gate);

/// Runs the whole gene sequence on |0...0>. Oracle genes apply
/// `oracle_unitary`; passing none makes oracle genes an error.
/// Gate errors are rethrown with the gene position prepended.
StateVector run_circuit(const Chromosome& chromosome, int num_qubits,
                        const UnitaryMatrix* oracle_unitary = nullptr);

/// Marginal distribution over `measured_qubits`, in listed order with
/// the first listed qubit as the most significant outcome bit.
ProbabilityDistribution measure_probabilities(const StateVector& state,
                                              std::span<const int> measured_qubits);

/// Product of the gate unitaries from start_index to the end of the
/// chromosome, in application order. start_index == length gives the
/// identity.
UnitaryMatrix extract_unitary(const Chromosome& chromosome, int num_qubits,
                              int start_index,
                              const UnitaryMatrix* oracle_unitary = nullptr);

/// Full 2^n x 2^n matrix of a single gate.
UnitaryMatrix gate_unitary(const GateSpec& gate, int num_qubits);

template <typename Derived>
bool is_normalized(const Eigen::MatrixBase<Derived>& state, double tol = 1e-9) {
  return std::abs(state.squaredNorm() - 1.0) < tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = 1e-9) {
  if (u.rows() != u.cols()) return false;
  const auto residual = (u * u.adjoint() -
                         Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                            .cwiseAbs()
                            .maxCoeff();
  return residual < tol;
}

}  // namespace qevo
