// Writes the deterministic synthetic experiment used by the end-to-end tests.

#include <CLI11.hpp>

#include <iostream>

#include "sparse_expand/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic experiment directory"};
  std::string dir;
  sparse_expand::SyntheticSpec spec;
  app.add_option("dir", dir, "Output directory")->required();
  app.add_option("--docs", spec.documents, "Number of documents");
  app.add_option("--topics", spec.topics, "Number of topics");
  app.add_option("--seed", spec.seed, "Random seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    sparse_expand::write_synthetic(dir, spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
