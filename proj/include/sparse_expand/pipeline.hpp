#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_expand/suggestion.hpp"

namespace sparse_expand {

inline constexpr std::string_view kToolVersion = "0.3.0";
inline constexpr int kConfigVersion = 1;

// Experiment description. Loaded from a versioned JSON file; relative paths
// resolve against the file's directory. Command-line flags overwrite fields
// after loading.
struct PipelineConfig {
  int version = kConfigVersion;
  std::string lang = "en";
  std::filesystem::path docs;
  std::filesystem::path index;  // prebuilt snapshot, used instead of docs when set
  std::filesystem::path topics;
  std::filesystem::path articles;
  std::filesystem::path sim_corpus;
  std::filesystem::path back_corpus;
  std::filesystem::path seeds;
  std::filesystem::path qrels;
  std::filesystem::path judgments;
  std::filesystem::path out;
  std::vector<System> systems;
  std::size_t k = 10;
  std::size_t n = 50;
  double boost = 2.0;
  std::string similarity = "jaccard";
  std::size_t min_links = 3;
  std::size_t depth = 1000;
  bool lax = false;

  static PipelineConfig load(const std::filesystem::path& file);
  static PipelineConfig from_json(std::string_view json, const std::filesystem::path& base_dir);
  // Canonical JSON text; its FNV-1a hash goes into the manifest.
  std::string canonical_json() const;
};

// Every problem found, not only the first. Empty means valid.
std::vector<std::string> validate_config(const PipelineConfig& cfg);

struct PipelineOutput {
  System system = System::str;
  std::filesystem::path run;
  std::filesystem::path suggestions;
  std::optional<double> map;
};

// Runs the requested systems in WIKI_ENTITY, WIKI_SIM, WIKI_BACK, STR, COMBO
// order and writes out/<lang>/<system>/{run.trec, suggestions.tsv} plus
// out/<lang>/manifest.json. Throws UsageError listing every configuration
// error before any work starts.
std::vector<PipelineOutput> run_pipeline(const PipelineConfig& cfg);

}  // namespace sparse_expand
