#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "qevo/problems.hpp"

#include <nlohmann/json_fwd.hpp>

namespace qevo {

/// A test case counts as passed once the target outcome reaches this
/// probability (0.5 plus a rounding margin).
inline constexpr double kHitThreshold = 0.52;

/// Divisor turning a gate count into the efficiency term.
inline constexpr double kGateCountScale = 100000.0;

enum class FitnessKind { Baseline, DirectQA, IndirectQA };

std::string_view fitness_name(FitnessKind kind);
std::optional<FitnessKind> fitness_from_name(std::string_view name);

/// Scalar fitness with its component breakdown. Inapplicable components
/// are zero; fitness = penalty + (hits term when hits_remaining > 0,
/// otherwise oracle_ratio + gate_term).
struct FitnessReport {
  double fitness = 0.0;
  int hits_remaining = 0;
  double error_sum = 0.0;
  double penalty = 0.0;
  double oracle_ratio = 0.0;
  double gate_term = 0.0;
};

nlohmann::json to_json(const FitnessReport& report);

/// Square root of the base-2 Jensen-Shannon divergence; a metric on the
/// probability simplex with values in [0, 1]. Zero-probability terms
/// contribute nothing.
template <typename DerivedP, typename DerivedQ>
double jensen_shannon_distance(const Eigen::MatrixBase<DerivedP>& p,
                               const Eigen::MatrixBase<DerivedQ>& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("jensen_shannon_distance: size mismatch");
  double divergence = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = p(i);
    const double qi = q(i);
    const double mi = 0.5 * (pi + qi);
    if (pi > 0.0) divergence += 0.5 * pi * std::log2(pi / mi);
    if (qi > 0.0) divergence += 0.5 * qi * std::log2(qi / mi);
  }
  return std::sqrt(std::max(divergence, 0.0));
}

struct HitsResult {
  int hits_remaining = 0;
  double error_sum = 0.0;
};

/// Runs the chromosome against every test case. hits_remaining starts at
/// the case count and drops once per case whose target probability is at
/// least kHitThreshold; the Jensen-Shannon distance of each failing case
/// accumulates into error_sum.
HitsResult evaluate_hits(const Chromosome& chromosome, const ProblemSuite& suite);

/// Hits plus averaged error while any case fails; gate-count efficiency
/// term once all cases pass.
FitnessReport baseline_fitness(const Chromosome& chromosome, const ProblemSuite& suite);

/// Like baseline while cases fail; once all pass, the ratio of oracle
/// genes to the classical oracle-call baseline plus the gate term.
FitnessReport direct_qa_fitness(const Chromosome& chromosome, const ProblemSuite& suite);

/// Baseline with a constraint penalty of (#TestCases + 1) for each
/// missing structural ingredient: superposition-capable gates and
/// controlled (entangling) gates.
FitnessReport indirect_qa_fitness(const Chromosome& chromosome, const ProblemSuite& suite);

bool contains_superposition_gates(const Chromosome& chromosome);
bool contains_entanglement_gates(const Chromosome& chromosome);

FitnessReport evaluate_fitness(FitnessKind kind, const Chromosome& chromosome,
                               const ProblemSuite& suite);

}  // namespace qevo
