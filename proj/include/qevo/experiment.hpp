#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qevo/evolve.hpp"

#include <nlohmann/json_fwd.hpp>

namespace qevo {

/// One experiment configuration: a problem, a fitness function, and a
/// number of independent GA runs whose seeds derive from ga.seed by run
/// index.
struct ExperimentManifest {
  ProblemKind problem = ProblemKind::BernsteinVazirani;
  int num_input_bits = 3;
  FitnessKind fitness = FitnessKind::Baseline;
  int runs = 12;
  GAConfig ga{};
  std::filesystem::path output_dir;
  bool emit_svg = false;
};

ExperimentManifest manifest_from_json(const nlohmann::json& j);
nlohmann::json manifest_to_json(const ExperimentManifest& manifest);

/// Fills chromosome_length/generations with the per-problem defaults
/// when the caller left them unset (<= 0).
void apply_problem_defaults(ExperimentManifest& manifest);

/// Throws std::invalid_argument on inconsistent fields.
void validate_manifest(const ExperimentManifest& manifest);

struct ExperimentResult {
  std::vector<std::vector<GenerationStats>> run_stats;
  int best_run = -1;
  Chromosome best_chromosome;
  FitnessReport best_report;
  std::filesystem::path output_dir;
};

/// Executes all runs, writes one CSV per run
/// (generation,min_fitness,mean_fitness), the aggregate CSV of
/// per-generation averages, and the best circuit as QASM, text diagram
/// and fitness JSON. Fails before any run starts when the manifest is
/// invalid or the output directory cannot be created.
ExperimentResult run_manifest(const ExperimentManifest& manifest);

/// Rebuilds the manifest's problem suite.
ProblemSuite suite_for_manifest(const ExperimentManifest& manifest);

struct ComparisonReport {
  int oracle_calls = 0;
  double classical_oracle_calls = 0.0;
  double oracle_ratio = 0.0;
  /// Probability of the target outcome, one entry per test case.
  std::vector<double> target_probabilities;
  /// Unitary of the gates following the last oracle call (Search only).
  std::optional<UnitaryMatrix> post_oracle_unitary;
};

/// Reference comparison for a circuit that passes every test case;
/// throws std::invalid_argument otherwise.
ComparisonReport compare_to_reference(const Chromosome& best, const ProblemSuite& suite);

std::string format_comparison(const ComparisonReport& report);

/// Minimal line chart of the aggregate convergence curves.
void write_convergence_svg(const std::filesystem::path& path,
                           const std::vector<double>& avg_min,
                           const std::vector<double>& avg_mean);

}  // namespace qevo
