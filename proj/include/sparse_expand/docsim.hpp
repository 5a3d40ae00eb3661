#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_expand/analysis.hpp"
#include "sparse_expand/suggestion.hpp"

namespace sparse_expand {

struct SimDocument {
  std::string title;
  std::string body;
};

inline constexpr std::size_t kDefaultImportantWords = 50;

// Plain-text documents with their top-n TF*IDF word sets precomputed.
// Documents are kept sorted by title.
class SimCorpus {
 public:
  SimCorpus(std::vector<SimDocument> docs, AnalyzerChain chain, std::size_t n = kDefaultImportantWords);

  // Reads <dir>/<percent-encoded-title>.txt files.
  static SimCorpus load(const std::filesystem::path& dir, AnalyzerChain chain,
                        std::size_t n = kDefaultImportantWords);

  std::size_t size() const { return docs_.size(); }
  std::size_t n() const { return n_; }
  const SimDocument& document(std::size_t i) const { return docs_.at(i); }
  // Ordinal of the document with exactly this title; -1 when absent.
  std::ptrdiff_t find(std::string_view title) const;

  // Top-m terms by tf * idf, ties by term; sorted lexicographically.
  std::vector<std::string> important_words(std::size_t doc, std::size_t m) const;
  // Cached important_words(doc, n()).
  const std::vector<std::string>& words(std::size_t doc) const { return words_.at(doc); }

  std::size_t overlap(std::size_t a, std::size_t b) const;
  double sim(std::size_t a, std::size_t b) const;

 private:
  struct Weighted {
    std::string term;
    double weight = 0;
  };

  std::vector<SimDocument> docs_;
  AnalyzerChain chain_;
  std::size_t n_;
  std::vector<std::vector<Weighted>> ranked_;  // all terms, weight descending then term
  std::vector<std::vector<std::string>> words_;
};

// Documents most similar to the seed, best first, ties by title. The seed is
// excluded and zero similarities are omitted. Throws DataError "seed not
// found" when no document carries the seed title.
std::vector<ConceptSuggestion> suggest_docsim(const SimCorpus& corpus, std::string_view seed_title, std::size_t k,
                                              System label = System::wiki_sim);

// Tab-separated `topic_id seed_title` lines.
std::map<std::string, std::string> parse_seeds(std::string_view content);
std::map<std::string, std::string> load_seeds(const std::filesystem::path& path);

}  // namespace sparse_expand
