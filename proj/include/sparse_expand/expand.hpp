#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sparse_expand/analysis.hpp"
#include "sparse_expand/corpus.hpp"
#include "sparse_expand/query.hpp"
#include "sparse_expand/suggestion.hpp"

namespace sparse_expand {

struct ExpansionConfig {
  double title_boost = 2.0;
  std::size_t max_concepts = 10;
  // Empty means chic_all-<topic lang>.
  std::string target_field;

  void validate() const;
  std::string field_for(const Topic& topic) const;
};

// Title tokens that survive the chain become term clauses boosted by
// title_boost. Suggestions follow with boost 1, deduplicated
// case-insensitively and capped at max_concepts: texts containing whitespace
// or analyzing to several tokens become phrases, the rest terms, and texts
// analyzing to nothing are dropped. Throws DataError "empty title".
Query build_query(const Topic& topic, const SuggestionSet* suggestions, const ExpansionConfig& cfg,
                  const AnalyzerChain& chain);

// Round-robin by rank over the input sets taken in WIKI_ENTITY, WIKI_SIM,
// WIKI_BACK, STR order, dropping case-insensitive repeats, truncated to
// max_concepts. Scores are 1/rank.
SuggestionSet combo_merge(std::vector<SuggestionSet> sets, std::size_t max_concepts);

// `topic_id TAB query` lines.
std::string format_query_file(std::span<const std::pair<std::string, Query>> queries);
std::vector<std::pair<std::string, Query>> parse_query_file(std::string_view content);

}  // namespace sparse_expand
