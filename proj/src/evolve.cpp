#include "qevo/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qevo/nelder_mead.hpp"

namespace qevo {

int elite_count(const GAConfig& config) {
  return static_cast<int>(std::floor(config.elitism_fraction * config.population_size));
}

void validate_config(const GAConfig& config) {
  if (config.population_size < 1)
    throw std::invalid_argument("population_size must be >= 1");
  if (config.crossover_prob < 0.0 || config.crossover_prob > 1.0)
    throw std::invalid_argument("crossover_prob outside [0, 1]");
  if (config.gate_swap_prob < 0.0 || config.gate_swap_prob > 1.0)
    throw std::invalid_argument("gate_swap_prob outside [0, 1]");
  if (config.elitism_fraction < 0.0 || config.elitism_fraction > 1.0)
    throw std::invalid_argument("elitism_fraction outside [0, 1]");
  if (elite_count(config) < 1)
    throw std::invalid_argument("elitism_fraction * population_size must be >= 1");
  if (config.chromosome_length < 1)
    throw std::invalid_argument("chromosome_length must be >= 1");
  if (config.generations < 0) throw std::invalid_argument("generations must be >= 0");
  if (config.tournament_size < 1)
    throw std::invalid_argument("tournament_size must be >= 1");
  if (config.num_threads < 0) throw std::invalid_argument("num_threads must be >= 0");
  if (config.gate_set.empty()) throw std::invalid_argument("empty gate set");
  if (config.param_opt.top_k < 0 || config.param_opt.max_iters < 0)
    throw std::invalid_argument("negative param_opt fields");
}

Population init_population(const GAConfig& config, int num_qubits, RandomStream& rng) {
  validate_config(config);
  Population population;
  population.reserve(config.population_size);
  for (int i = 0; i < config.population_size; ++i) {
    Chromosome chromosome;
    chromosome.reserve(config.chromosome_length);
    for (int g = 0; g < config.chromosome_length; ++g)
      chromosome.push_back(random_gate(num_qubits, config.gate_set, rng));
    population.push_back(std::move(chromosome));
  }
  return population;
}

std::vector<FitnessReport> evaluate_population(const Population& population,
                                               const ProblemSuite& suite,
                                               FitnessKind fitness,
                                               const GAConfig& config) {
  std::vector<FitnessReport> reports(population.size());
  unsigned workers = config.num_threads > 0
                         ? static_cast<unsigned>(config.num_threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, population.size());

  if (workers <= 1) {
    for (std::size_t i = 0; i < population.size(); ++i)
      reports[i] = evaluate_fitness(fitness, population[i], suite);
    return reports;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < population.size(); i += workers)
          reports[i] = evaluate_fitness(fitness, population[i], suite);
      } catch (...) {
        std::scoped_lock lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return reports;
}

namespace {

/// Indices sorted by ascending fitness; ties keep the lower index first.
std::vector<int> fitness_order(const std::vector<FitnessReport>& reports) {
  std::vector<int> order(reports.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return reports[a].fitness < reports[b].fitness;
  });
  return order;
}

int tournament_select(const std::vector<FitnessReport>& reports, int tournament_size,
                      RandomStream& rng) {
  const int n = static_cast<int>(reports.size());
  int best = uniform_int(rng, 0, n - 1);
  for (int round = 1; round < tournament_size; ++round) {
    const int challenger = uniform_int(rng, 0, n - 1);
    if (reports[challenger].fitness < reports[best].fitness ||
        (reports[challenger].fitness == reports[best].fitness && challenger < best))
      best = challenger;
  }
  return best;
}

void mutate(Chromosome& chromosome, int num_qubits, const GAConfig& config,
            RandomStream& rng) {
  const int length = static_cast<int>(chromosome.size());
  for (int i = 0; i < length; ++i) {
    if (!chance(rng, config.gate_swap_prob)) continue;
    if (config.mutation_mode == MutationMode::Replacement) {
      chromosome[i] = random_gate(num_qubits, config.gate_set, rng);
    } else {
      std::swap(chromosome[i], chromosome[uniform_int(rng, 0, length - 1)]);
    }
  }
}

std::vector<int> angle_positions(const Chromosome& chromosome) {
  std::vector<int> positions;
  for (std::size_t i = 0; i < chromosome.size(); ++i)
    if (is_parameterized(chromosome[i].kind)) positions.push_back(static_cast<int>(i));
  return positions;
}

}  // namespace

std::optional<std::pair<Chromosome, double>> refine_angles(const Chromosome& chromosome,
                                                           const ProblemSuite& suite,
                                                           FitnessKind fitness,
                                                           int max_iters) {
  const std::vector<int> positions = angle_positions(chromosome);
  if (positions.empty() || max_iters < 1) return std::nullopt;

  Eigen::VectorXd start(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    start(static_cast<Eigen::Index>(i)) = chromosome[positions[i]].angle.value();

  Chromosome scratch = chromosome;
  const auto objective = [&](const Eigen::VectorXd& angles) {
    for (std::size_t i = 0; i < positions.size(); ++i)
      scratch[positions[i]].angle = angles(static_cast<Eigen::Index>(i));
    return evaluate_fitness(fitness, scratch, suite).fitness;
  };

  const double current = objective(start);
  NelderMeadOptions options;
  options.max_iters = max_iters;
  const NelderMeadResult result =
      nelder_mead_minimize(objective, start, -std::numbers::pi, std::numbers::pi, options);
  if (!(result.value < current)) return std::nullopt;

  for (std::size_t i = 0; i < positions.size(); ++i)
    scratch[positions[i]].angle = result.x(static_cast<Eigen::Index>(i));
  return std::make_pair(std::move(scratch), result.value);
}

std::pair<Population, GenerationStats> step_generation(const Population& population,
                                                       const ProblemSuite& suite,
                                                       FitnessKind fitness,
                                                       const GAConfig& config,
                                                       RandomStream& rng,
                                                       int generation) {
  if (static_cast<int>(population.size()) != config.population_size)
    throw std::invalid_argument("population size does not match config");

  const std::vector<FitnessReport> reports =
      evaluate_population(population, suite, fitness, config);
  const std::vector<int> order = fitness_order(reports);

  GenerationStats stats;
  stats.generation = generation;
  stats.min_fitness = reports[order.front()].fitness;
  stats.mean_fitness = 0.0;
  for (const FitnessReport& r : reports) stats.mean_fitness += r.fitness;
  stats.mean_fitness /= static_cast<double>(reports.size());
  stats.best_chromosome = population[order.front()];

  Population next;
  next.reserve(population.size());
  const int elites = std::min<int>(elite_count(config), population.size());
  for (int i = 0; i < elites; ++i) next.push_back(population[order[i]]);

  const int length = config.chromosome_length;
  while (next.size() < population.size()) {
    const Chromosome& parent1 = population[tournament_select(reports, config.tournament_size, rng)];
    const Chromosome& parent2 = population[tournament_select(reports, config.tournament_size, rng)];
    Chromosome child1 = parent1;
    Chromosome child2 = parent2;
    if (length >= 2 && chance(rng, config.crossover_prob)) {
      const int cut = uniform_int(rng, 1, length - 1);
      for (int g = cut; g < length; ++g) std::swap(child1[g], child2[g]);
    }
    mutate(child1, suite.num_qubits, config, rng);
    mutate(child2, suite.num_qubits, config, rng);
    next.push_back(std::move(child1));
    if (next.size() < population.size()) next.push_back(std::move(child2));
  }

  if (config.param_opt.enabled()) {
    const int refine = std::min(config.param_opt.top_k, elites);
    for (int i = 0; i < refine; ++i) {
      if (auto improved =
              refine_angles(next[i], suite, fitness, config.param_opt.max_iters))
        next[i] = std::move(improved->first);
    }
  }

  return {std::move(next), std::move(stats)};
}

std::vector<GenerationStats> run_experiment(const GAConfig& config,
                                            const ProblemSuite& suite,
                                            FitnessKind fitness, RandomStream& rng) {
  validate_config(config);
  Population population = init_population(config, suite.num_qubits, rng);
  std::vector<GenerationStats> stats;
  stats.reserve(config.generations);
  for (int g = 0; g < config.generations; ++g) {
    auto [next, generation_stats] =
        step_generation(population, suite, fitness, config, rng, g);
    stats.push_back(std::move(generation_stats));
    population = std::move(next);
  }
  return stats;
}

}  // namespace qevo
