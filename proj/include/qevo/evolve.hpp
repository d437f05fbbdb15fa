#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qevo/fitness.hpp"

namespace qevo {

/// How "randomly swapping individual gates" is realized: replace the
/// gene with a fresh random gate, or exchange it with another position.
enum class MutationMode { Replacement, PositionalSwap };

/// Angle refinement of the generation's best individuals; disabled while
/// top_k or max_iters is zero.
struct ParamOptConfig {
  int top_k = 0;
  int max_iters = 0;

  bool enabled() const { return top_k > 0 && max_iters > 0; }
};

struct GAConfig {
  int population_size = 1000;
  double crossover_prob = 0.4;
  double gate_swap_prob = 0.03;
  double elitism_fraction = 0.10;
  int chromosome_length = 30;
  int generations = 800;
  int tournament_size = 2;
  std::uint64_t seed = 0;
  ParamOptConfig param_opt{};
  MutationMode mutation_mode = MutationMode::Replacement;
  GateSet gate_set = default_gate_set();
  /// Worker threads for fitness evaluation; 0 picks the hardware count.
  int num_threads = 0;
};

/// Number of individuals copied unaltered into the next generation.
int elite_count(const GAConfig& config);

/// Throws std::invalid_argument on out-of-range fields.
void validate_config(const GAConfig& config);

struct GenerationStats {
  int generation = 0;
  double min_fitness = 0.0;
  double mean_fitness = 0.0;
  Chromosome best_chromosome;
};

using Population = std::vector<Chromosome>;

Population init_population(const GAConfig& config, int num_qubits, RandomStream& rng);

/// Fitness of every individual, in population order. Evaluation is pure,
/// so it may fan out over config.num_threads workers; results do not
/// depend on the thread count.
std::vector<FitnessReport> evaluate_population(const Population& population,
                                               const ProblemSuite& suite,
                                               FitnessKind fitness,
                                               const GAConfig& config);

/// One generation: evaluate, carry elites, refill by tournament
/// selection + single-point crossover + per-gene mutation, optionally
/// refine the best individuals' angles. Stats describe the evaluated
/// incoming population.
std::pair<Population, GenerationStats> step_generation(const Population& population,
                                                       const ProblemSuite& suite,
                                                       FitnessKind fitness,
                                                       const GAConfig& config,
                                                       RandomStream& rng,
                                                       int generation = 0);

/// Full GA run: config.generations steps from a fresh random population.
std::vector<GenerationStats> run_experiment(const GAConfig& config,
                                            const ProblemSuite& suite,
                                            FitnessKind fitness, RandomStream& rng);

/// Simplex refinement of the rotation angles of one chromosome. Returns
/// the refined chromosome and its fitness when strictly better than the
/// current fitness, nothing otherwise.
std::optional<std::pair<Chromosome, double>> refine_angles(const Chromosome& chromosome,
                                                           const ProblemSuite& suite,
                                                           FitnessKind fitness,
                                                           int max_iters);

}  // namespace qevo
