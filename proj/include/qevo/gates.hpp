#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qevo/random.hpp"

namespace qevo {

/// Gate catalog. Oracle is a placeholder resolved against a problem
/// oracle at evaluation time; it acts on all qubits of the circuit.
enum class GateKind {
  Identity,
  H,
  X,
  Y,
  Z,
  RX,
  RY,
  RZ,
  CX,
  CY,
  CZ,
  CH,
  CRX,
  CRY,
  CRZ,
  Oracle,
};

constexpr bool is_parameterized(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRX:
    case GateKind::CRY:
    case GateKind::CRZ:
      return true;
    default:
      return false;
  }
}

constexpr bool is_controlled(GateKind kind) {
  switch (kind) {
    case GateKind::CX:
    case GateKind::CY:
    case GateKind::CZ:
    case GateKind::CH:
    case GateKind::CRX:
    case GateKind::CRY:
    case GateKind::CRZ:
      return true;
    default:
      return false;
  }
}

/// Kinds that can move a basis state into superposition (Hadamard and
/// x/y-axis rotations, plus their controlled versions).
constexpr bool is_superposition_kind(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::CH:
    case GateKind::CRX:
    case GateKind::CRY:
      return true;
    default:
      return false;
  }
}

/// Lowercase OpenQASM-style mnemonic ("id", "h", ..., "oracle").
std::string_view gate_name(GateKind kind);

/// Inverse of gate_name. Returns nullopt for unknown mnemonics.
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// One gate instance. `control` is present exactly for controlled kinds
/// and `angle` (radians, in [-pi, pi]) exactly for parameterized kinds.
struct GateSpec {
  GateKind kind = GateKind::Identity;
  int target = 0;
  std::optional<int> control;
  std::optional<double> angle;

  bool operator==(const GateSpec&) const = default;
};

/// Fixed-length gene sequence; identity genes are explicit padding.
using Chromosome = std::vector<GateSpec>;

/// Pool of kinds the generator may draw from. Kept as a vector so the
/// draw order is deterministic under a fixed seed.
using GateSet = std::vector<GateKind>;

/// Default experiment pool: every single-qubit family, the controlled
/// versions appearing in reference circuits, and the oracle placeholder.
GateSet default_gate_set();

/// Throws std::invalid_argument when the gate cannot act on a register
/// of `num_qubits` qubits (bad indices, missing/extra angle or control,
/// angle out of range).
void validate_gate(const GateSpec& gate, int num_qubits);

bool is_valid_gate(const GateSpec& gate, int num_qubits);

/// Throws when any gene is invalid; message carries the gene position.
void validate_chromosome(const Chromosome& chromosome, int num_qubits);

/// Uniform random gate: kind uniform over `gate_set`, qubit indices
/// uniform over the valid distinct assignments, angle uniform over
/// [-pi, pi] when the kind is parameterized.
GateSpec random_gate(int num_qubits, const GateSet& gate_set, RandomStream& rng);

/// Number of non-identity genes (oracle genes included).
int count_gates(const Chromosome& chromosome);

/// Number of oracle genes.
int count_oracle_gates(const Chromosome& chromosome);

}  // namespace qevo
