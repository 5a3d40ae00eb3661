#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_expand/analysis.hpp"
#include "sparse_expand/corpus.hpp"
#include "sparse_expand/index.hpp"
#include "sparse_expand/suggestion.hpp"
#include "sparse_expand/wikitext.hpp"

namespace sparse_expand {

struct Article {
  std::string title;
  std::string wikitext;
};

enum class MatchStage { original, stopword_free, permutation, single_word };
std::string_view match_stage_name(MatchStage s);

struct MatchResult {
  std::string title;
  MatchStage stage = MatchStage::original;
  double score = 0;
};

// Longest stopword-free title for which the permutation stage runs.
inline constexpr std::size_t kMaxPermutationTokens = 6;

// Encyclopedia articles plus a TF*IDF title index (single field "title").
class ArticleStore {
 public:
  explicit ArticleStore(std::vector<Article> articles, AnalyzerChain chain = AnalyzerChain::for_language("en"));

  // Reads <dir>/<percent-encoded-title>.wiki files.
  static ArticleStore load(const std::filesystem::path& dir,
                           AnalyzerChain chain = AnalyzerChain::for_language("en"));

  std::size_t size() const { return articles_.size(); }
  const Article* find(std::string_view title) const;

  // Stages in order: (a) original - the title equals the topic word for word,
  // ignoring case and punctuation; (b) stopword_free - the analyzed title
  // equals the analyzed topic; (c) permutation - the title contains some
  // ordering of the distinct analyzed topic tokens as a phrase; (d)
  // single_word - the title contains any one token. The first stage with a
  // hit wins; inside a stage the highest score, then the shorter title, then
  // the lexicographically smaller title.
  std::optional<MatchResult> match(std::string_view topic_title) const;

 private:
  std::vector<Article> articles_;
  AnalyzerChain chain_;
  std::string title_field_;
  std::optional<Index> titles_;
  std::map<std::string, std::vector<DocOrdinal>, std::less<>> exact_keys_;
  std::map<std::string, std::size_t, std::less<>> by_title_;
};

// Lowercased tokenizer output joined by single spaces.
std::string title_key(std::string_view title);

// Match the topic, extract lead links, keep the first k with score 1/rank.
SuggestionSet suggest_wiki_lead(const ArticleStore& store, const Topic& topic, std::size_t k,
                                std::size_t min_links = wikitext::kDefaultMinLinks);

}  // namespace sparse_expand
