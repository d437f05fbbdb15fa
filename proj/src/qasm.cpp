#include "qevo/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qevo {

namespace {

std::string format_angle(double angle) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", angle);
  return buf;
}

std::string register_list(int num_qubits) {
  std::string out;
  for (int q = 0; q < num_qubits; ++q) {
    if (q) out += ',';
    out += "q[" + std::to_string(q) + "]";
  }
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

/// Plain numbers plus the pi spellings we may meet in hand-written files
/// (pi, -pi, pi/2, 2*pi, ...).
double parse_angle(const std::string& token) {
  std::string s = trim(token);
  if (s.empty()) throw std::invalid_argument("empty angle");
  double sign = 1.0;
  if (s.front() == '-') {
    sign = -1.0;
    s.erase(s.begin());
  } else if (s.front() == '+') {
    s.erase(s.begin());
  }
  const auto pos = s.find("pi");
  if (pos != std::string::npos) {
    double factor = 1.0;
    const std::string before = trim(s.substr(0, pos));
    std::string after = trim(s.substr(pos + 2));
    if (!before.empty()) {
      if (before.back() != '*') throw std::invalid_argument("bad angle: " + token);
      factor *= std::stod(before.substr(0, before.size() - 1));
    }
    if (!after.empty()) {
      if (after.front() != '/') throw std::invalid_argument("bad angle: " + token);
      factor /= std::stod(after.substr(1));
    }
    return sign * factor * std::numbers::pi;
  }
  std::size_t consumed = 0;
  const double value = std::stod(s, &consumed);
  if (consumed != s.size()) throw std::invalid_argument("bad angle: " + token);
  return sign * value;
}

int parse_qubit(const std::string& operand) {
  const std::string s = trim(operand);
  const auto open = s.find('[');
  const auto close = s.find(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("bad operand: " + operand);
  return std::stoi(s.substr(open + 1, close - open - 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

std::string to_qasm(const Chromosome& chromosome, int num_qubits) {
  validate_chromosome(chromosome, num_qubits);
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  if (count_oracle_gates(chromosome) > 0) {
    out << "opaque oracle";
    for (int q = 0; q < num_qubits; ++q) out << (q ? "," : " ") << "a" << q;
    out << ";\n";
  }
  out << "qreg q[" << num_qubits << "];\n";
  for (const GateSpec& gene : chromosome) {
    if (gene.kind == GateKind::Identity) continue;
    if (gene.kind == GateKind::Oracle) {
      out << "oracle " << register_list(num_qubits) << ";\n";
      continue;
    }
    out << gate_name(gene.kind);
    if (gene.angle) out << '(' << format_angle(*gene.angle) << ')';
    out << ' ';
    if (gene.control) out << "q[" << *gene.control << "],";
    out << "q[" << gene.target << "];\n";
  }
  return out.str();
}

ParsedCircuit from_qasm(const std::string& text) {
  ParsedCircuit circuit;
  bool saw_qreg = false;

  // strip comments, then process ';'-terminated statements
  std::string cleaned;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto comment = line.find("//");
    if (comment != std::string::npos) line.erase(comment);
    cleaned += line;
    cleaned += ' ';
  }

  for (const std::string& raw : split(cleaned, ';')) {
    const std::string stmt = trim(raw);
    if (stmt.empty()) continue;
    if (stmt.starts_with("OPENQASM") || stmt.starts_with("include") ||
        stmt.starts_with("opaque") || stmt.starts_with("barrier") ||
        stmt.starts_with("creg"))
      continue;
    if (stmt.starts_with("qreg")) {
      if (saw_qreg) throw std::invalid_argument("multiple qreg declarations");
      const auto open = stmt.find('[');
      const auto close = stmt.find(']');
      if (open == std::string::npos || close == std::string::npos)
        throw std::invalid_argument("bad qreg: " + stmt);
      circuit.num_qubits = std::stoi(stmt.substr(open + 1, close - open - 1));
      if (circuit.num_qubits < 1) throw std::invalid_argument("bad qreg size");
      saw_qreg = true;
      continue;
    }
    if (!saw_qreg) throw std::invalid_argument("gate before qreg: " + stmt);

    // split "name(angle?) operands"
    std::size_t name_end = 0;
    while (name_end < stmt.size() &&
           (std::isalnum(static_cast<unsigned char>(stmt[name_end])) || stmt[name_end] == '_'))
      ++name_end;
    const std::string name = stmt.substr(0, name_end);
    std::string rest = stmt.substr(name_end);
    std::optional<double> angle;
    const std::string rest_trimmed = trim(rest);
    if (!rest_trimmed.empty() && rest_trimmed.front() == '(') {
      const auto close = rest_trimmed.find(')');
      if (close == std::string::npos) throw std::invalid_argument("unclosed angle: " + stmt);
      angle = parse_angle(rest_trimmed.substr(1, close - 1));
      rest = rest_trimmed.substr(close + 1);
    } else {
      rest = rest_trimmed;
    }

    const auto kind = gate_kind_from_name(name);
    if (!kind) throw std::invalid_argument("unknown gate: " + stmt);

    GateSpec gene;
    gene.kind = *kind;
    if (*kind == GateKind::Oracle) {
      circuit.chromosome.push_back(gene);
      continue;
    }
    const std::vector<std::string> operands = split(trim(rest), ',');
    if (is_controlled(*kind)) {
      if (operands.size() != 2) throw std::invalid_argument("expected two operands: " + stmt);
      gene.control = parse_qubit(operands[0]);
      gene.target = parse_qubit(operands[1]);
    } else {
      if (operands.size() != 1) throw std::invalid_argument("expected one operand: " + stmt);
      gene.target = parse_qubit(operands[0]);
    }
    if (is_parameterized(*kind)) {
      if (!angle) throw std::invalid_argument("missing angle: " + stmt);
      gene.angle = angle;
    } else if (angle) {
      throw std::invalid_argument("unexpected angle: " + stmt);
    }
    circuit.chromosome.push_back(gene);
  }

  if (!saw_qreg) throw std::invalid_argument("missing qreg declaration");
  validate_chromosome(circuit.chromosome, circuit.num_qubits);
  return circuit;
}

std::string to_text_diagram(const Chromosome& chromosome, int num_qubits) {
  validate_chromosome(chromosome, num_qubits);
  std::ostringstream out;
  out << num_qubits << " qubits, " << count_gates(chromosome) << " gates\n";
  for (std::size_t i = 0; i < chromosome.size(); ++i) {
    const GateSpec& gene = chromosome[i];
    char idx[16];
    std::snprintf(idx, sizeof(idx), "%3zu: ", i);
    out << idx << gate_name(gene.kind);
    if (gene.angle) {
      char buf[24];
      std::snprintf(buf, sizeof(buf), "(%.6f)", *gene.angle);
      out << buf;
    }
    if (gene.kind == GateKind::Oracle) {
      out << " q[0.." << num_qubits - 1 << "]";
    } else {
      out << ' ';
      if (gene.control) out << "q[" << *gene.control << "] -> ";
      out << "q[" << gene.target << "]";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qevo
