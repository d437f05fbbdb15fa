#include "qevo/fitness.hpp"

#include <nlohmann/json.hpp>

namespace qevo {

std::string_view fitness_name(FitnessKind kind) {
  switch (kind) {
    case FitnessKind::Baseline:
      return "baseline";
    case FitnessKind::DirectQA:
      return "direct";
    case FitnessKind::IndirectQA:
      return "indirect";
  }
  return "?";
}

std::optional<FitnessKind> fitness_from_name(std::string_view name) {
  if (name == "baseline") return FitnessKind::Baseline;
  if (name == "direct") return FitnessKind::DirectQA;
  if (name == "indirect") return FitnessKind::IndirectQA;
  return std::nullopt;
}

nlohmann::json to_json(const FitnessReport& report) {
  return {{"fitness", report.fitness},
          {"hits_remaining", report.hits_remaining},
          {"error_sum", report.error_sum},
          {"penalty", report.penalty},
          {"oracle_ratio", report.oracle_ratio},
          {"gate_term", report.gate_term}};
}

HitsResult evaluate_hits(const Chromosome& chromosome, const ProblemSuite& suite) {
  HitsResult result;
  result.hits_remaining = static_cast<int>(suite.test_cases.size());
  for (const TestCase& tc : suite.test_cases) {
    const StateVector state =
        run_circuit(chromosome, suite.num_qubits, &tc.oracle.unitary);
    const ProbabilityDistribution probs =
        measure_probabilities(state, tc.measured_qubits);
    if (probs(target_index(tc)) >= kHitThreshold) {
      --result.hits_remaining;
    } else {
      result.error_sum += jensen_shannon_distance(probs, tc.target);
    }
  }
  return result;
}

bool contains_superposition_gates(const Chromosome& chromosome) {
  for (const GateSpec& gene : chromosome)
    if (is_superposition_kind(gene.kind)) return true;
  return false;
}

bool contains_entanglement_gates(const Chromosome& chromosome) {
  for (const GateSpec& gene : chromosome)
    if (is_controlled(gene.kind)) return true;
  return false;
}

namespace {

double hits_term(const HitsResult& hits) {
  return hits.hits_remaining + hits.error_sum / std::max(hits.hits_remaining, 1);
}

}  // namespace

FitnessReport baseline_fitness(const Chromosome& chromosome, const ProblemSuite& suite) {
  const HitsResult hits = evaluate_hits(chromosome, suite);
  FitnessReport report;
  report.hits_remaining = hits.hits_remaining;
  report.error_sum = hits.error_sum;
  if (hits.hits_remaining > 0) {
    report.fitness = hits_term(hits);
  } else {
    report.gate_term = count_gates(chromosome) / kGateCountScale;
    report.fitness = report.gate_term;
  }
  return report;
}

FitnessReport direct_qa_fitness(const Chromosome& chromosome, const ProblemSuite& suite) {
  if (!(suite.classical_oracle_calls > 0.0))
    throw std::invalid_argument("suite without a classical oracle-call baseline");
  const HitsResult hits = evaluate_hits(chromosome, suite);
  FitnessReport report;
  report.hits_remaining = hits.hits_remaining;
  report.error_sum = hits.error_sum;
  if (hits.hits_remaining > 0) {
    report.fitness = hits_term(hits);
  } else {
    report.oracle_ratio = count_oracle_gates(chromosome) / suite.classical_oracle_calls;
    report.gate_term = count_gates(chromosome) / kGateCountScale;
    report.fitness = report.oracle_ratio + report.gate_term;
  }
  return report;
}

FitnessReport indirect_qa_fitness(const Chromosome& chromosome, const ProblemSuite& suite) {
  const HitsResult hits = evaluate_hits(chromosome, suite);
  const double penalty_unit = static_cast<double>(suite.test_cases.size()) + 1.0;
  FitnessReport report;
  report.hits_remaining = hits.hits_remaining;
  report.error_sum = hits.error_sum;
  if (!contains_superposition_gates(chromosome)) report.penalty += penalty_unit;
  if (!contains_entanglement_gates(chromosome)) report.penalty += penalty_unit;
  if (hits.hits_remaining > 0) {
    report.fitness = report.penalty + hits_term(hits);
  } else {
    report.gate_term = count_gates(chromosome) / kGateCountScale;
    report.fitness = report.penalty + report.gate_term;
  }
  return report;
}

FitnessReport evaluate_fitness(FitnessKind kind, const Chromosome& chromosome,
                               const ProblemSuite& suite) {
  switch (kind) {
    case FitnessKind::Baseline:
      return baseline_fitness(chromosome, suite);
    case FitnessKind::DirectQA:
      return direct_qa_fitness(chromosome, suite);
    case FitnessKind::IndirectQA:
      return indirect_qa_fitness(chromosome, suite);
  }
  throw std::invalid_argument("unknown fitness kind");
}

}  // namespace qevo
