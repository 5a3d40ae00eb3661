#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparse_expand/corpus.hpp"
#include "sparse_expand/index.hpp"
#include "sparse_expand/suggestion.hpp"

namespace sparse_expand {

enum class Similarity { jaccard, log_jaccard };

Similarity parse_similarity(std::string_view name);  // "jaccard" | "log"
std::string_view similarity_name(Similarity s);

// J = df_xy / (df_x + df_y - df_xy); 0 when all three counts are 0.
double jaccard(std::uint64_t df_x, std::uint64_t df_y, std::uint64_t df_xy);

// ln(1+df_xy) / (ln(1+df_x) + ln(1+df_y) - ln(1+df_xy)); 0 when df_xy = 0.
double log_jaccard(std::uint64_t df_x, std::uint64_t df_y, std::uint64_t df_xy);

struct CooccurConfig {
  std::vector<std::string> input_fields = {"dc:title", "dc:description"};
  std::vector<std::string> concept_fields = {"dc:subject", "enrichment:concept_label"};
  Similarity similarity = Similarity::jaccard;
  std::size_t top_k = 10;

  void validate() const;
};

// Document-set sizes behind one candidate's score.
struct ConceptScore {
  std::string value;
  std::uint64_t df_x = 0;
  std::uint64_t df_y = 0;
  std::uint64_t df_xy = 0;
  double score = 0;

  bool operator==(const ConceptScore&) const = default;
};

struct StrResult {
  enum class Mode { all, any, none };

  Mode mode = Mode::none;  // which query document set produced the candidates
  std::vector<DocOrdinal> query_docs;
  std::vector<ConceptScore> ranked;  // top_k, score descending then value
};

// DS_x: documents whose input fields (in the topic's language) contain every
// title token, falling back to any token when that set is empty. Candidates
// are the distinct raw concept-field values of DS_x; DS_y of a value is every
// document holding it verbatim in any concept field.
StrResult score_concepts(const Index& index, const Topic& topic, const CooccurConfig& cfg);

SuggestionSet suggest_str(const Index& index, const Topic& topic, const CooccurConfig& cfg);

}  // namespace sparse_expand
