#include "qevo/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qevo {

namespace {

struct KindName {
  GateKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {GateKind::Identity, "id"}, {GateKind::H, "h"},     {GateKind::X, "x"},
    {GateKind::Y, "y"},         {GateKind::Z, "z"},     {GateKind::RX, "rx"},
    {GateKind::RY, "ry"},       {GateKind::RZ, "rz"},   {GateKind::CX, "cx"},
    {GateKind::CY, "cy"},       {GateKind::CZ, "cz"},   {GateKind::CH, "ch"},
    {GateKind::CRX, "crx"},     {GateKind::CRY, "cry"}, {GateKind::CRZ, "crz"},
    {GateKind::Oracle, "oracle"},
};

}  // namespace

std::string_view gate_name(GateKind kind) {
  for (const auto& entry : kKindNames)
    if (entry.kind == kind) return entry.name;
  return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (const auto& entry : kKindNames)
    if (entry.name == name) return entry.kind;
  return std::nullopt;
}

GateSet default_gate_set() {
  return {GateKind::Identity, GateKind::H,  GateKind::X,  GateKind::Y,
          GateKind::Z,        GateKind::RX, GateKind::RY, GateKind::RZ,
          GateKind::CX,       GateKind::CY, GateKind::CZ, GateKind::CH,
          GateKind::Oracle};
}

void validate_gate(const GateSpec& gate, int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be positive");
  if (gate.target < 0 || gate.target >= num_qubits)
    throw std::invalid_argument("target qubit out of range");
  if (is_controlled(gate.kind)) {
    if (!gate.control) throw std::invalid_argument("controlled gate without control qubit");
    if (*gate.control < 0 || *gate.control >= num_qubits)
      throw std::invalid_argument("control qubit out of range");
    if (*gate.control == gate.target)
      throw std::invalid_argument("control and target must differ");
  } else if (gate.control) {
    throw std::invalid_argument("unexpected control qubit");
  }
  if (is_parameterized(gate.kind)) {
    if (!gate.angle) throw std::invalid_argument("parameterized gate without angle");
    if (!(std::abs(*gate.angle) <= std::numbers::pi))
      throw std::invalid_argument("angle outside [-pi, pi]");
  } else if (gate.angle) {
    throw std::invalid_argument("unexpected angle");
  }
}

bool is_valid_gate(const GateSpec& gate, int num_qubits) {
  try {
    validate_gate(gate, num_qubits);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

void validate_chromosome(const Chromosome& chromosome, int num_qubits) {
  for (std::size_t i = 0; i < chromosome.size(); ++i) {
    try {
      validate_gate(chromosome[i], num_qubits);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": " + e.what());
    }
  }
}

GateSpec random_gate(int num_qubits, const GateSet& gate_set, RandomStream& rng) {
  if (gate_set.empty()) throw std::invalid_argument("empty gate set");
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be positive");
  for (GateKind kind : gate_set)
    if (is_controlled(kind) && num_qubits < 2)
      throw std::invalid_argument("controlled gates need at least two qubits");

  GateSpec gate;
  gate.kind = gate_set[uniform_int(rng, 0, static_cast<int>(gate_set.size()) - 1)];
  if (gate.kind == GateKind::Oracle) {
    gate.target = 0;  // acts on the whole register
    return gate;
  }
  gate.target = uniform_int(rng, 0, num_qubits - 1);
  if (is_controlled(gate.kind)) {
    // uniform over the remaining qubits
    int control = uniform_int(rng, 0, num_qubits - 2);
    if (control >= gate.target) ++control;
    gate.control = control;
  }
  if (is_parameterized(gate.kind))
    gate.angle = uniform_real(rng, -std::numbers::pi, std::numbers::pi);
  return gate;
}

int count_gates(const Chromosome& chromosome) {
  int count = 0;
  for (const GateSpec& gene : chromosome)
    if (gene.kind != GateKind::Identity) ++count;
  return count;
}

int count_oracle_gates(const Chromosome& chromosome) {
  int count = 0;
  for (const GateSpec& gene : chromosome)
    if (gene.kind == GateKind::Oracle) ++count;
  return count;
}

}  // namespace qevo
