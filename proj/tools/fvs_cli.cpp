// Command-line harness: experiment grids, function analysis, plot export.

#include <algorithm>
#include <bit>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fvs/experiment.hpp"

namespace {

std::vector<int> expand_sizes(const std::vector<std::string>& tokens) {
  // Accepts "5", "5-8" and comma lists.
  std::vector<int> sizes;
  for (const auto& token : tokens) {
    std::string item;
    std::istringstream parts(token);
    while (std::getline(parts, item, ',')) {
      if (item.empty()) continue;
      const auto dash = item.find('-');
      if (dash == std::string::npos) {
        sizes.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dash));
        const int hi = std::stoi(item.substr(dash + 1));
        for (int n = lo; n <= hi; ++n) sizes.push_back(n);
      }
    }
  }
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary search for balanced Boolean functions with five-valued Walsh spectra"};
  app.require_subcommand(1);

  // search
  auto* search = app.add_subcommand("search", "run an experiment grid and write logs");
  std::vector<std::string> size_tokens{"5"};
  std::vector<std::string> encodings{"GP"};
  std::vector<std::string> fitnesses{"F1"};
  fvs::EaConfig base;
  std::string out_dir = "results";
  unsigned jobs = 1;
  std::uint64_t checkpoint = fvs::kDefaultCheckpointInterval;
  std::vector<int> init_depth{base.tree_limits.init.min_depth, base.tree_limits.init.max_depth};
  search->add_option("--n", size_tokens, "variable counts, e.g. 5 6 or 5-8")->expected(1, -1);
  search->add_option("--encoding", encodings, "TT, ANF and/or GP")->expected(1, -1);
  search->add_option("--fitness", fitnesses, "F1 and/or F2")->expected(1, -1);
  search->add_option("--pop", base.population_size, "population size")->capture_default_str();
  search->add_option("--evals", base.evaluation_budget, "evaluations per run")->capture_default_str();
  search->add_option("--reps", base.repetitions, "runs per grid cell")->capture_default_str();
  search->add_option("--seed", base.master_seed, "master seed")->capture_default_str();
  search->add_option("--pmut", base.mutation_probability, "per-child mutation probability")->capture_default_str();
  search->add_option("--max-depth", base.tree_limits.max_depth, "GP offspring depth cap")->capture_default_str();
  search->add_option("--init-depth", init_depth, "GP initial depth range MIN MAX")->expected(2);
  search->add_option("--crossovers", base.crossovers, "crossover operator names (default: all)");
  search->add_option("--mutations", base.mutations, "mutation operator names (default: all)");
  search->add_option("--checkpoint", checkpoint, "trace checkpoint interval")->capture_default_str();
  search->add_option("--out", out_dir, "output directory")->capture_default_str();
  search->add_option("--jobs", jobs, "concurrent runs")->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "report the properties of one truth table");
  std::string hex;
  int n = 0;
  bool as_json = false;
  analyze->add_option("hex", hex, "truth table in hex, first digit = f(0..3)")->required();
  analyze->add_option("--n", n, "variable count (default: from the hex length)");
  analyze->add_flag("--json", as_json, "print JSON instead of text");

  // export
  auto* exporter = app.add_subcommand("export", "write violin and convergence plot data");
  std::string results_dir = "results";
  std::string plots_dir;
  exporter->add_option("results", results_dir, "directory written by search")->capture_default_str();
  exporter->add_option("--out", plots_dir, "output directory (default: <results>/plots)");

  CLI11_PARSE(app, argc, argv);

  if (*search) {
    fvs::ExperimentSpec spec;
    try {
      spec.sizes = expand_sizes(size_tokens);
      for (const auto& e : encodings) spec.encodings.push_back(fvs::parse_encoding(e));
      for (const auto& f : fitnesses) spec.fitnesses.push_back(fvs::parse_fitness(f));
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    base.tree_limits.init = {init_depth[0], init_depth[1]};
    spec.base = base;
    spec.out_dir = out_dir;
    spec.jobs = std::max(1U, jobs);
    spec.checkpoint_interval = checkpoint;
    return fvs::run_experiment(spec, std::cout, std::cerr);
  }

  if (*analyze) {
    try {
      if (n == 0) {
        const std::size_t bits = hex.size() * 4;
        if (bits < 4 || (bits & (bits - 1)) != 0) throw std::invalid_argument("hex length is not 2^n / 4");
        n = std::countr_zero(bits);
      }
      const auto report = fvs::analyze(hex, n);
      if (as_json) {
        std::cout << fvs::report_json(report).dump(2) << "\n";
      } else {
        fvs::print_report(std::cout, report);
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    return 0;
  }

  if (*exporter) {
    const std::filesystem::path out = plots_dir.empty() ? std::filesystem::path(results_dir) / "plots" : std::filesystem::path(plots_dir);
    return fvs::export_plot_data(results_dir, out, std::cout, std::cerr);
  }
  return 0;
}
