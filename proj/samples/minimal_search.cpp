// Evolves one five-valued function with GP and prints it.

#include <iostream>

#include "fvs/engine.hpp"

int main() {
  fvs::EaConfig config;
  config.n = 6;
  config.encoding = fvs::EncodingKind::GP;
  config.fitness = fvs::FitnessKind::F1;
  config.evaluation_budget = 100'000;

  const fvs::RunResult r = fvs::run(config, 42);
  std::cout << "fitness      " << r.best.value << "\n"
            << "nonlinearity " << r.best.nonlinearity << "\n"
            << "profile      " << r.profile.to_string() << "\n"
            << "truth table  " << r.truth_table_hex << "\n"
            << "tree         " << r.genotype << "\n";
}
