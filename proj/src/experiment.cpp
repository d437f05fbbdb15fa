#include "qevo/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qevo/qasm.hpp"

namespace qevo {

namespace {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::optional<ProblemKind> problem_from_name(std::string_view name) {
  if (name == "bv") return ProblemKind::BernsteinVazirani;
  if (name == "search") return ProblemKind::Search;
  return std::nullopt;
}

GateSet gate_set_from_json(const nlohmann::json& names) {
  GateSet set;
  for (const auto& name : names) {
    const auto kind = gate_kind_from_name(name.get<std::string>());
    if (!kind) throw std::invalid_argument("unknown gate in gate_set: " + name.get<std::string>());
    set.push_back(*kind);
  }
  return set;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

ExperimentManifest manifest_from_json(const nlohmann::json& j) {
  ExperimentManifest m;
  if (j.contains("problem")) {
    const auto problem = problem_from_name(j.at("problem").get<std::string>());
    if (!problem) throw std::invalid_argument("unknown problem: " + j.at("problem").get<std::string>());
    m.problem = *problem;
  }
  if (j.contains("num_input_bits")) m.num_input_bits = j.at("num_input_bits").get<int>();
  if (j.contains("fitness")) {
    const auto fitness = fitness_from_name(j.at("fitness").get<std::string>());
    if (!fitness) throw std::invalid_argument("unknown fitness: " + j.at("fitness").get<std::string>());
    m.fitness = *fitness;
  }
  if (j.contains("runs")) m.runs = j.at("runs").get<int>();
  if (j.contains("output_dir")) m.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("emit_svg")) m.emit_svg = j.at("emit_svg").get<bool>();

  // unset length/generations pick per-problem defaults later
  m.ga.chromosome_length = 0;
  m.ga.generations = 0;
  if (j.contains("ga")) {
    const nlohmann::json& g = j.at("ga");
    if (g.contains("population_size")) m.ga.population_size = g.at("population_size").get<int>();
    if (g.contains("crossover_prob")) m.ga.crossover_prob = g.at("crossover_prob").get<double>();
    if (g.contains("gate_swap_prob")) m.ga.gate_swap_prob = g.at("gate_swap_prob").get<double>();
    if (g.contains("elitism_fraction")) m.ga.elitism_fraction = g.at("elitism_fraction").get<double>();
    if (g.contains("chromosome_length")) m.ga.chromosome_length = g.at("chromosome_length").get<int>();
    if (g.contains("generations")) m.ga.generations = g.at("generations").get<int>();
    if (g.contains("tournament_size")) m.ga.tournament_size = g.at("tournament_size").get<int>();
    if (g.contains("seed")) m.ga.seed = g.at("seed").get<std::uint64_t>();
    if (g.contains("num_threads")) m.ga.num_threads = g.at("num_threads").get<int>();
    if (g.contains("mutation")) {
      const std::string mode = g.at("mutation").get<std::string>();
      if (mode == "replacement") m.ga.mutation_mode = MutationMode::Replacement;
      else if (mode == "positional_swap") m.ga.mutation_mode = MutationMode::PositionalSwap;
      else throw std::invalid_argument("unknown mutation mode: " + mode);
    }
    if (g.contains("param_opt")) {
      const nlohmann::json& p = g.at("param_opt");
      if (p.contains("top_k")) m.ga.param_opt.top_k = p.at("top_k").get<int>();
      if (p.contains("max_iters")) m.ga.param_opt.max_iters = p.at("max_iters").get<int>();
    }
    if (g.contains("gate_set")) m.ga.gate_set = gate_set_from_json(g.at("gate_set"));
  }
  return m;
}

nlohmann::json manifest_to_json(const ExperimentManifest& m) {
  nlohmann::json gate_names = nlohmann::json::array();
  for (GateKind kind : m.ga.gate_set) gate_names.push_back(std::string(gate_name(kind)));
  return {
      {"problem", std::string(problem_name(m.problem))},
      {"num_input_bits", m.num_input_bits},
      {"fitness", std::string(fitness_name(m.fitness))},
      {"runs", m.runs},
      {"output_dir", m.output_dir.string()},
      {"emit_svg", m.emit_svg},
      {"ga",
       {{"population_size", m.ga.population_size},
        {"crossover_prob", m.ga.crossover_prob},
        {"gate_swap_prob", m.ga.gate_swap_prob},
        {"elitism_fraction", m.ga.elitism_fraction},
        {"chromosome_length", m.ga.chromosome_length},
        {"generations", m.ga.generations},
        {"tournament_size", m.ga.tournament_size},
        {"seed", m.ga.seed},
        {"num_threads", m.ga.num_threads},
        {"mutation",
         m.ga.mutation_mode == MutationMode::Replacement ? "replacement" : "positional_swap"},
        {"param_opt",
         {{"top_k", m.ga.param_opt.top_k}, {"max_iters", m.ga.param_opt.max_iters}}},
        {"gate_set", std::move(gate_names)}}}};
}

void apply_problem_defaults(ExperimentManifest& manifest) {
  const bool bv = manifest.problem == ProblemKind::BernsteinVazirani;
  if (manifest.ga.chromosome_length <= 0) manifest.ga.chromosome_length = bv ? 15 : 30;
  if (manifest.ga.generations <= 0) manifest.ga.generations = bv ? 500 : 800;
}

void validate_manifest(const ExperimentManifest& manifest) {
  if (manifest.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (manifest.problem == ProblemKind::BernsteinVazirani && manifest.num_input_bits < 1)
    throw std::invalid_argument("num_input_bits must be >= 1");
  if (manifest.problem == ProblemKind::Search && manifest.num_input_bits < 2)
    throw std::invalid_argument("search needs at least 2 qubits");
  if (manifest.output_dir.empty()) throw std::invalid_argument("output_dir not set");
  validate_config(manifest.ga);
}

ProblemSuite suite_for_manifest(const ExperimentManifest& manifest) {
  return manifest.problem == ProblemKind::BernsteinVazirani
             ? make_bv_suite(manifest.num_input_bits)
             : make_search_suite(manifest.num_input_bits);
}

namespace {

std::string run_csv(const std::vector<GenerationStats>& stats) {
  std::string out = "generation,min_fitness,mean_fitness\n";
  for (const GenerationStats& s : stats) {
    out += std::to_string(s.generation);
    out += ',';
    out += format_double(s.min_fitness);
    out += ',';
    out += format_double(s.mean_fitness);
    out += '\n';
  }
  return out;
}

std::string aggregate_csv(const std::vector<std::vector<GenerationStats>>& runs) {
  std::string out = "generation,avg_min_fitness,avg_mean_fitness\n";
  if (runs.empty()) return out;
  const std::size_t generations = runs.front().size();
  for (std::size_t g = 0; g < generations; ++g) {
    double min_sum = 0.0;
    double mean_sum = 0.0;
    for (const auto& run : runs) {
      min_sum += run[g].min_fitness;
      mean_sum += run[g].mean_fitness;
    }
    out += std::to_string(g);
    out += ',';
    out += format_double(min_sum / static_cast<double>(runs.size()));
    out += ',';
    out += format_double(mean_sum / static_cast<double>(runs.size()));
    out += '\n';
  }
  return out;
}

}  // namespace

ExperimentResult run_manifest(const ExperimentManifest& manifest_in) {
  ExperimentManifest manifest = manifest_in;
  apply_problem_defaults(manifest);
  validate_manifest(manifest);

  std::error_code ec;
  std::filesystem::create_directories(manifest.output_dir, ec);
  if (ec || !std::filesystem::is_directory(manifest.output_dir))
    throw std::runtime_error("cannot create output directory " +
                             manifest.output_dir.string());

  const ProblemSuite suite = suite_for_manifest(manifest);
  write_file(manifest.output_dir / "manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  write_file(manifest.output_dir / "suite.json", suite_to_json(suite).dump(2) + "\n");

  ExperimentResult result;
  result.output_dir = manifest.output_dir;
  result.run_stats.reserve(manifest.runs);

  double best_fitness = std::numeric_limits<double>::infinity();
  for (int run = 0; run < manifest.runs; ++run) {
    GAConfig config = manifest.ga;
    config.seed = manifest.ga.seed + static_cast<std::uint64_t>(run);
    RandomStream rng(config.seed);
    std::vector<GenerationStats> stats = run_experiment(config, suite, manifest.fitness, rng);

    char name[32];
    std::snprintf(name, sizeof(name), "run_%02d.csv", run);
    write_file(manifest.output_dir / name, run_csv(stats));

    if (!stats.empty() && stats.back().min_fitness < best_fitness) {
      best_fitness = stats.back().min_fitness;
      result.best_run = run;
      result.best_chromosome = stats.back().best_chromosome;
    }
    result.run_stats.push_back(std::move(stats));
  }

  write_file(manifest.output_dir / "aggregate.csv", aggregate_csv(result.run_stats));

  if (result.best_run >= 0) {
    result.best_report = evaluate_fitness(manifest.fitness, result.best_chromosome, suite);
    write_file(manifest.output_dir / "best.qasm",
               to_qasm(result.best_chromosome, suite.num_qubits));
    write_file(manifest.output_dir / "best.txt",
               to_text_diagram(result.best_chromosome, suite.num_qubits));
    write_file(manifest.output_dir / "best_fitness.json",
               to_json(result.best_report).dump(2) + "\n");
    if (result.best_report.hits_remaining == 0) {
      write_file(manifest.output_dir / "comparison.txt",
                 format_comparison(compare_to_reference(result.best_chromosome, suite)));
    }
  }

  if (manifest.emit_svg && !result.run_stats.empty() && !result.run_stats.front().empty()) {
    std::vector<double> avg_min;
    std::vector<double> avg_mean;
    const std::size_t generations = result.run_stats.front().size();
    for (std::size_t g = 0; g < generations; ++g) {
      double min_sum = 0.0;
      double mean_sum = 0.0;
      for (const auto& run : result.run_stats) {
        min_sum += run[g].min_fitness;
        mean_sum += run[g].mean_fitness;
      }
      avg_min.push_back(min_sum / result.run_stats.size());
      avg_mean.push_back(mean_sum / result.run_stats.size());
    }
    write_convergence_svg(manifest.output_dir / "convergence.svg", avg_min, avg_mean);
  }

  return result;
}

ComparisonReport compare_to_reference(const Chromosome& best, const ProblemSuite& suite) {
  const HitsResult hits = evaluate_hits(best, suite);
  if (hits.hits_remaining != 0)
    throw std::invalid_argument("circuit does not pass all test cases");

  ComparisonReport report;
  report.oracle_calls = count_oracle_gates(best);
  report.classical_oracle_calls = suite.classical_oracle_calls;
  report.oracle_ratio = report.oracle_calls / suite.classical_oracle_calls;
  for (const TestCase& tc : suite.test_cases) {
    const StateVector state = run_circuit(best, suite.num_qubits, &tc.oracle.unitary);
    const ProbabilityDistribution probs = measure_probabilities(state, tc.measured_qubits);
    report.target_probabilities.push_back(probs(target_index(tc)));
  }

  if (suite.problem == ProblemKind::Search && report.oracle_calls > 0) {
    int last_oracle = -1;
    for (std::size_t i = 0; i < best.size(); ++i)
      if (best[i].kind == GateKind::Oracle) last_oracle = static_cast<int>(i);
    report.post_oracle_unitary =
        extract_unitary(best, suite.num_qubits, last_oracle + 1);
  }
  return report;
}

std::string format_comparison(const ComparisonReport& report) {
  std::ostringstream out;
  out << "oracle calls:           " << report.oracle_calls << '\n';
  out << "classical oracle calls: " << report.classical_oracle_calls << '\n';
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", report.oracle_ratio);
  out << "oracle ratio:           " << buf << '\n';
  out << "target probabilities per test case:\n";
  for (std::size_t i = 0; i < report.target_probabilities.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "  case %2zu: %.9f", i, report.target_probabilities[i]);
    out << buf << '\n';
  }
  if (report.post_oracle_unitary) {
    const UnitaryMatrix& u = *report.post_oracle_unitary;
    out << "post-oracle unitary, real part:\n";
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), " %+ .4f", u(r, c).real());
        out << buf;
      }
      out << '\n';
    }
    out << "post-oracle unitary, imaginary part:\n";
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), " %+ .4f", u(r, c).imag());
        out << buf;
      }
      out << '\n';
    }
  }
  return out.str();
}

void write_convergence_svg(const std::filesystem::path& path,
                           const std::vector<double>& avg_min,
                           const std::vector<double>& avg_mean) {
  if (avg_min.empty() || avg_min.size() != avg_mean.size())
    throw std::invalid_argument("convergence curves empty or mismatched");

  const double width = 800.0;
  const double height = 500.0;
  const double margin = 60.0;
  double lo = avg_min.front();
  double hi = avg_min.front();
  for (double v : avg_min) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : avg_mean) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;

  const auto x_of = [&](std::size_t g) {
    return margin + (width - 2 * margin) * static_cast<double>(g) /
                        std::max<std::size_t>(avg_min.size() - 1, 1);
  };
  const auto y_of = [&](double v) {
    return height - margin - (height - 2 * margin) * (v - lo) / (hi - lo);
  };
  const auto polyline = [&](const std::vector<double>& values, const char* color) {
    std::string points;
    for (std::size_t g = 0; g < values.size(); ++g) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x_of(g), y_of(values[g]));
      points += buf;
    }
    return "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.0f\" y=\"%.0f\" font-size=\"12\">generation</text>\n",
                width / 2 - 30, height - margin / 3);
  svg << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"8\" y=\"%.0f\" font-size=\"12\">%.4g</text>\n", margin, hi);
  svg << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"8\" y=\"%.0f\" font-size=\"12\">%.4g</text>\n",
                height - margin, lo);
  svg << buf;
  svg << polyline(avg_min, "#1f77b4");
  svg << polyline(avg_mean, "#d62728");
  svg << "<text x=\"" << width - margin - 160 << "\" y=\"" << margin
      << "\" font-size=\"12\" fill=\"#1f77b4\">avg min fitness</text>\n";
  svg << "<text x=\"" << width - margin - 160 << "\" y=\"" << margin + 16
      << "\" font-size=\"12\" fill=\"#d62728\">avg mean fitness</text>\n";
  svg << "</svg>\n";
  write_file(path, svg.str());
}

}  // namespace qevo
