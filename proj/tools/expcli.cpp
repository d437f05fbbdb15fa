// Experiment runner: evolves quantum circuits against the Bernstein-Vazirani
// or unstructured-search test suites and writes per-generation convergence
// CSVs plus the best circuit found.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qevo/experiment.hpp"
#include "qevo/qasm.hpp"

namespace {

qevo::ExperimentManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read manifest " + path);
  nlohmann::json j;
  in >> j;
  return qevo::manifest_from_json(j);
}

int run_one(qevo::ExperimentManifest manifest) {
  qevo::apply_problem_defaults(manifest);
  qevo::validate_manifest(manifest);
  std::printf("problem=%s fitness=%s runs=%d population=%d generations=%d seed=%llu\n",
              std::string(qevo::problem_name(manifest.problem)).c_str(),
              std::string(qevo::fitness_name(manifest.fitness)).c_str(), manifest.runs,
              manifest.ga.population_size, manifest.ga.generations,
              static_cast<unsigned long long>(manifest.ga.seed));

  const qevo::ExperimentResult result = qevo::run_manifest(manifest);
  for (std::size_t run = 0; run < result.run_stats.size(); ++run) {
    const auto& stats = result.run_stats[run];
    if (stats.empty()) continue;
    std::printf("  run %2zu: final min fitness %.6g\n", run, stats.back().min_fitness);
  }
  if (result.best_run >= 0) {
    std::printf("best run: %d, fitness %.6g (hits remaining %d)\n", result.best_run,
                result.best_report.fitness, result.best_report.hits_remaining);
    std::printf("outputs in %s\n", result.output_dir.string().c_str());
    if (result.best_report.hits_remaining == 0) {
      const qevo::ProblemSuite suite = qevo::suite_for_manifest(manifest);
      std::fputs(
          qevo::format_comparison(qevo::compare_to_reference(result.best_chromosome, suite))
              .c_str(),
          stdout);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolutionary quantum-circuit synthesis experiments"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "run an experiment (12 GA runs by default)");
  std::string manifest_path;
  std::string problem;
  std::string fitness = "";
  int runs = -1;
  std::int64_t seed = -1;
  int generations = -1;
  int population = -1;
  int length = -1;
  int bits = -1;
  int threads = -1;
  std::string out_dir;
  bool svg = false;
  run->add_option("--manifest", manifest_path, "JSON manifest file");
  run->add_option("--problem", problem, "bv or search")
      ->check(CLI::IsMember({"bv", "search"}));
  run->add_option("--fitness", fitness, "baseline, direct, indirect, or all")
      ->check(CLI::IsMember({"baseline", "direct", "indirect", "all"}));
  run->add_option("--runs", runs, "independent GA runs");
  run->add_option("--seed", seed, "base seed; run r uses seed + r");
  run->add_option("--generations", generations, "generations per run");
  run->add_option("--population", population, "population size");
  run->add_option("--length", length, "chromosome length");
  run->add_option("--bits", bits, "input bits (bv) / qubits (search)");
  run->add_option("--threads", threads, "fitness evaluation threads (0 = hardware)");
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--svg", svg, "also render convergence.svg");

  // --- compare ---
  auto* compare = app.add_subcommand("compare", "compare a circuit against the reference");
  std::string circuit_path;
  std::string cmp_problem = "search";
  int cmp_bits = 3;
  compare->add_option("--circuit", circuit_path, "OpenQASM file")->required();
  compare->add_option("--problem", cmp_problem, "bv or search")
      ->check(CLI::IsMember({"bv", "search"}));
  compare->add_option("--bits", cmp_bits, "input bits (bv) / qubits (search)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      qevo::ExperimentManifest manifest;
      if (!manifest_path.empty()) manifest = load_manifest(manifest_path);
      if (!problem.empty())
        manifest.problem = problem == "bv" ? qevo::ProblemKind::BernsteinVazirani
                                           : qevo::ProblemKind::Search;
      if (bits >= 0) manifest.num_input_bits = bits;
      if (runs >= 0) manifest.runs = runs;
      if (seed >= 0) manifest.ga.seed = static_cast<std::uint64_t>(seed);
      if (generations >= 0) manifest.ga.generations = generations;
      if (population >= 0) manifest.ga.population_size = population;
      if (length >= 0) manifest.ga.chromosome_length = length;
      if (threads >= 0) manifest.ga.num_threads = threads;
      if (!out_dir.empty()) manifest.output_dir = out_dir;
      if (svg) manifest.emit_svg = true;
      if (manifest_path.empty() && manifest.output_dir.empty())
        throw std::invalid_argument("--out is required");

      if (fitness == "all") {
        const std::filesystem::path base = manifest.output_dir;
        for (const auto kind : {qevo::FitnessKind::Baseline, qevo::FitnessKind::DirectQA,
                                qevo::FitnessKind::IndirectQA}) {
          qevo::ExperimentManifest sub = manifest;
          sub.fitness = kind;
          sub.output_dir = base / std::string(qevo::fitness_name(kind));
          if (int rc = run_one(std::move(sub)); rc != 0) return rc;
        }
        return 0;
      }
      if (!fitness.empty()) manifest.fitness = *qevo::fitness_from_name(fitness);
      return run_one(std::move(manifest));
    }

    if (compare->parsed()) {
      std::ifstream in(circuit_path);
      if (!in) throw std::runtime_error("cannot read " + circuit_path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      const qevo::ParsedCircuit parsed = qevo::from_qasm(buffer.str());
      const qevo::ProblemSuite suite = cmp_problem == "bv"
                                           ? qevo::make_bv_suite(cmp_bits)
                                           : qevo::make_search_suite(cmp_bits);
      if (parsed.num_qubits != suite.num_qubits)
        throw std::invalid_argument("circuit register size does not match the problem");
      std::fputs(
          qevo::format_comparison(qevo::compare_to_reference(parsed.chromosome, suite))
              .c_str(),
          stdout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
