#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sparse_expand/analysis.hpp"
#include "sparse_expand/corpus.hpp"
#include "sparse_expand/query.hpp"

namespace sparse_expand {

using DocOrdinal = std::uint32_t;

struct Posting {
  DocOrdinal doc = 0;
  std::vector<std::uint32_t> positions;  // ascending

  std::size_t tf() const { return positions.size(); }
  bool operator==(const Posting&) const = default;
};

struct ScoredDoc {
  std::string doc_id;
  DocOrdinal doc = 0;
  double score = 0;

  bool operator==(const ScoredDoc&) const = default;
};

enum class SetMode { all, any };

struct IndexOptions {
  std::vector<std::string> schema = default_schema();
  // Copy-field receiving every token of the document; empty disables it.
  std::string all_field = "chic_all";

  bool operator==(const IndexOptions&) const = default;
};

// Position offset between consecutive field values, so phrases never span
// two values. Applies inside a field and between fields of the all-field.
inline constexpr std::uint32_t kValueGap = 100;

// tf_weight(tf) = sqrt(tf), idf(df) = 1 + ln(N / (1 + df)).
double tf_weight(std::size_t tf);
double idf(std::size_t n_docs, std::size_t df);

// Composite per-language field name, e.g. "dc:title" + "en" -> "dc:title-en".
std::string lang_field(std::string_view field, std::string_view lang);

// Immutable field-aware inverted index. Text fields are indexed per language
// under "<field>-<lang>" with positional postings; the raw trimmed values of
// every field are also kept as exact-match value postings under the same
// names, and the documents themselves are stored.
class Index {
 public:
  static Index build(std::vector<Document> corpus, const AnalyzerSet& chains, IndexOptions options = {});
  static Index load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;

  std::size_t size() const { return docs_.size(); }
  const Document& document(DocOrdinal doc) const { return docs_.at(doc); }
  const std::string& doc_id(DocOrdinal doc) const { return docs_.at(doc).id; }
  const IndexOptions& options() const { return options_; }
  const AnalyzerSet& analyzers() const { return chains_; }

  bool has_field(std::string_view field) const;
  std::vector<std::string> field_names() const;
  // Analyzer chain of a composite field; throws DataError for unknown names.
  const AnalyzerChain& chain_for(std::string_view field) const;

  // Postings of an already-analyzed term; empty when unseen.
  std::span<const Posting> postings(std::string_view field, std::string_view analyzed_term) const;
  std::uint32_t field_length(DocOrdinal doc, std::string_view field) const;
  std::uint64_t total_tokens(std::string_view field) const;
  // Analyzed terms of a field in lexicographic order.
  std::vector<std::string> terms(std::string_view field) const;

  // df of a raw term; the analysis must yield exactly one token.
  std::size_t df(std::string_view field, std::string_view raw_term) const;
  std::vector<DocOrdinal> doc_set(std::string_view field, std::span<const std::string> raw_terms,
                                  SetMode mode) const;

  // Documents holding `value` verbatim (trimmed, case-preserved) in `field`.
  std::span<const DocOrdinal> value_docs(std::string_view field, std::string_view value) const;

  // Documents matching an analyzed token sequence (a phrase when it has more
  // than one token) with their clause score boost * tf_weight * idf.
  std::vector<ScoredDoc> match_sequence(std::string_view field, std::span<const std::string> analyzed,
                                        double boost = 1.0) const;

  // Ranked disjunction; at most k results, score descending then doc_id.
  std::vector<ScoredDoc> search(const Query& query, std::size_t k) const;

  bool operator==(const Index&) const = default;

 private:
  struct FieldData {
    std::string name;
    std::string lang;
    std::map<std::string, std::vector<Posting>, std::less<>> postings;
    std::vector<std::uint32_t> lengths;  // per document
    std::uint64_t total_tokens = 0;

    bool operator==(const FieldData&) const = default;
  };
  using ValueMap = std::map<std::string, std::vector<DocOrdinal>, std::less<>>;

  Index() = default;
  const FieldData* find_field(std::string_view field) const;
  const FieldData& require_field(std::string_view field) const;
  std::string analyze_single(const FieldData& f, std::string_view raw_term) const;
  FieldData& field_slot(const std::string& name, const std::string& lang);

  IndexOptions options_;
  AnalyzerSet chains_;
  std::vector<Document> docs_;
  std::vector<FieldData> fields_;
  std::map<std::string, std::size_t, std::less<>> field_ids_;
  std::map<std::string, ValueMap, std::less<>> values_;

  friend class IndexSnapshot;
};

}  // namespace sparse_expand
