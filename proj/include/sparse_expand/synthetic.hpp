#pragma once

#include <cstdint>
#include <filesystem>

namespace sparse_expand {

struct SyntheticSpec {
  std::size_t documents = 1000;
  std::size_t topics = 10;
  std::size_t themes = 20;
  std::size_t sim_documents = 80;
  std::uint64_t seed = 20131;
};

// Writes a complete, deterministic experiment under `dir`: docs.jsonl,
// topics.jsonl, articles/, sim/, back/, seeds.tsv, qrels.txt,
// judgments.tsv and config.json (output directory out/).
void write_synthetic(const std::filesystem::path& dir, const SyntheticSpec& spec = {});

}  // namespace sparse_expand
