#include "sparse_expand/str_recommender.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "sparse_expand/analysis.hpp"
#include "sparse_expand/error.hpp"

namespace sparse_expand {

Similarity parse_similarity(std::string_view name) {
  if (name == "jaccard") return Similarity::jaccard;
  if (name == "log" || name == "log_jaccard") return Similarity::log_jaccard;
  throw UsageError("unknown similarity '" + std::string(name) + "' (expected jaccard or log)");
}

std::string_view similarity_name(Similarity s) { return s == Similarity::jaccard ? "jaccard" : "log"; }

namespace {

void check_counts(std::uint64_t df_x, std::uint64_t df_y, std::uint64_t df_xy) {
  if (df_xy > std::min(df_x, df_y)) throw std::invalid_argument("df_xy exceeds min(df_x, df_y)");
}

}  // namespace

double jaccard(std::uint64_t df_x, std::uint64_t df_y, std::uint64_t df_xy) {
  check_counts(df_x, df_y, df_xy);
  const std::uint64_t uni = df_x + df_y - df_xy;
  if (uni == 0) return 0.0;
  return static_cast<double>(df_xy) / static_cast<double>(uni);
}

double log_jaccard(std::uint64_t df_x, std::uint64_t df_y, std::uint64_t df_xy) {
  check_counts(df_x, df_y, df_xy);
  if (df_xy == 0) return 0.0;
  const double lx = std::log1p(static_cast<double>(df_x));
  const double ly = std::log1p(static_cast<double>(df_y));
  const double lxy = std::log1p(static_cast<double>(df_xy));
  return lxy / (lx + ly - lxy);
}

void CooccurConfig::validate() const {
  if (top_k < 1) throw UsageError("STR top_k must be at least 1");
  if (input_fields.empty() || concept_fields.empty()) throw UsageError("STR field lists must be non-empty");
  for (const auto& f : input_fields) {
    if (std::find(concept_fields.begin(), concept_fields.end(), f) != concept_fields.end()) {
      throw UsageError("STR input and concept fields overlap on " + f);
    }
  }
}

namespace {

std::vector<DocOrdinal> unite(const std::vector<DocOrdinal>& a, std::span<const DocOrdinal> b) {
  std::vector<DocOrdinal> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<DocOrdinal> intersect(const std::vector<DocOrdinal>& a, const std::vector<DocOrdinal>& b) {
  std::vector<DocOrdinal> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// a.score > b.score using exact rational comparison for plain Jaccard.
bool higher(const ConceptScore& a, const ConceptScore& b, Similarity sim) {
  if (sim == Similarity::jaccard) {
    using u128 = unsigned __int128;
    const u128 lhs = static_cast<u128>(a.df_xy) * (b.df_x + b.df_y - b.df_xy);
    const u128 rhs = static_cast<u128>(b.df_xy) * (a.df_x + a.df_y - a.df_xy);
    if (lhs != rhs) return lhs > rhs;
    return false;
  }
  return a.score > b.score;
}

}  // namespace

StrResult score_concepts(const Index& index, const Topic& topic, const CooccurConfig& cfg) {
  cfg.validate();
  std::vector<std::string> input_fields;
  for (const auto& f : cfg.input_fields) input_fields.push_back(lang_field(f, topic.lang));
  std::vector<std::string> concept_fields;
  for (const auto& f : cfg.concept_fields) concept_fields.push_back(lang_field(f, topic.lang));

  const AnalyzerChain& chain = index.chain_for(input_fields.front());
  // Raw title words that survive analysis, deduplicated on their analyzed form.
  std::vector<std::string> words;
  std::set<std::string> analyzed_seen;
  for (const auto& raw : tokenize(topic.title)) {
    auto analyzed = chain.analyze_token(raw);
    if (analyzed.empty()) continue;
    if (analyzed_seen.insert(analyzed).second) words.push_back(raw);
  }
  if (words.empty()) throw DataError("empty query: topic " + topic.id + " has no indexable title tokens");

  // Per word, the union of its documents across the input fields.
  std::vector<std::vector<DocOrdinal>> per_word;
  for (const auto& w : words) {
    std::vector<DocOrdinal> docs;
    const std::string one[] = {w};
    for (const auto& f : input_fields) docs = unite(docs, index.doc_set(f, one, SetMode::any));
    per_word.push_back(std::move(docs));
  }

  StrResult result;
  std::vector<DocOrdinal> ds_x = per_word.front();
  for (std::size_t i = 1; i < per_word.size(); ++i) ds_x = intersect(ds_x, per_word[i]);
  result.mode = StrResult::Mode::all;
  if (ds_x.empty()) {
    for (std::size_t i = 1; i < per_word.size(); ++i) ds_x = unite(ds_x, per_word[i]);
    ds_x = unite(ds_x, per_word.front());
    result.mode = StrResult::Mode::any;
  }
  if (ds_x.empty()) {
    result.mode = StrResult::Mode::none;
    return result;
  }

  std::set<std::string> candidates;
  for (auto d : ds_x) {
    const Document& doc = index.document(d);
    for (const auto& f : cfg.concept_fields) {
      if (const auto* vals = doc.values(f)) candidates.insert(vals->begin(), vals->end());
    }
  }

  std::vector<ConceptScore> scored;
  scored.reserve(candidates.size());
  for (const auto& value : candidates) {
    std::vector<DocOrdinal> ds_y;
    for (const auto& f : concept_fields) ds_y = unite(ds_y, index.value_docs(f, value));
    ConceptScore cs;
    cs.value = value;
    cs.df_x = ds_x.size();
    cs.df_y = ds_y.size();
    cs.df_xy = intersect(ds_x, ds_y).size();
    if (cs.df_xy == 0) continue;
    cs.score = cfg.similarity == Similarity::jaccard ? jaccard(cs.df_x, cs.df_y, cs.df_xy)
                                                     : log_jaccard(cs.df_x, cs.df_y, cs.df_xy);
    scored.push_back(std::move(cs));
  }
  // Candidates are visited in value order, so a stable sort keeps ties lexicographic.
  std::stable_sort(scored.begin(), scored.end(),
                   [&](const ConceptScore& a, const ConceptScore& b) { return higher(a, b, cfg.similarity); });
  if (scored.size() > cfg.top_k) scored.resize(cfg.top_k);
  result.query_docs = std::move(ds_x);
  result.ranked = std::move(scored);
  return result;
}

SuggestionSet suggest_str(const Index& index, const Topic& topic, const CooccurConfig& cfg) {
  auto result = score_concepts(index, topic, cfg);
  std::vector<ConceptSuggestion> items;
  for (auto& c : result.ranked) items.push_back(ConceptSuggestion{std::move(c.value), c.score, 0, System::str});
  return make_suggestion_set(topic.id, System::str, std::move(items));
}

}  // namespace sparse_expand
