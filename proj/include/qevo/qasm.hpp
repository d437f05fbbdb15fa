#pragma once

#include <string>

#include "qevo/gates.hpp"

namespace qevo {

struct ParsedCircuit {
  Chromosome chromosome;
  int num_qubits = 0;
};

/// OpenQASM 2.0 text for the non-identity genes. Oracle genes are
/// emitted as an opaque gate applied to the whole register.
std::string to_qasm(const Chromosome& chromosome, int num_qubits);

/// Parses the subset of OpenQASM 2.0 emitted by to_qasm (one register,
/// qelib1 single/controlled gates, the opaque oracle). Throws
/// std::invalid_argument with the offending statement on malformed input.
ParsedCircuit from_qasm(const std::string& text);

/// One line per gene for logs; identity padding shows as "id".
std::string to_text_diagram(const Chromosome& chromosome, int num_qubits);

}  // namespace qevo
