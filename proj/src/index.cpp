#include "sparse_expand/index.hpp"

#include <algorithm>
#include <cmath>

#include "sparse_expand/error.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

double tf_weight(std::size_t tf) { return std::sqrt(static_cast<double>(tf)); }

double idf(std::size_t n_docs, std::size_t df) {
  return 1.0 + std::log(static_cast<double>(n_docs) / (1.0 + static_cast<double>(df)));
}

std::string lang_field(std::string_view field, std::string_view lang) {
  std::string out(field);
  out.push_back('-');
  out += lang;
  return out;
}

Index::FieldData& Index::field_slot(const std::string& name, const std::string& lang) {
  auto it = field_ids_.find(name);
  if (it != field_ids_.end()) return fields_[it->second];
  field_ids_.emplace(name, fields_.size());
  FieldData f;
  f.name = name;
  f.lang = lang;
  f.lengths.assign(docs_.size(), 0);
  fields_.push_back(std::move(f));
  return fields_.back();
}

Index Index::build(std::vector<Document> corpus, const AnalyzerSet& chains, IndexOptions options) {
  if (corpus.empty()) throw DataError("empty corpus");
  Index index;
  index.options_ = std::move(options);
  index.chains_ = chains;
  index.docs_ = std::move(corpus);

  const auto& schema = index.options_.schema;
  const bool with_all = !index.options_.all_field.empty();
  for (const auto& [lang, chain] : index.chains_) {
    for (const auto& name : schema) index.field_slot(lang_field(name, lang), lang);
    if (with_all) index.field_slot(lang_field(index.options_.all_field, lang), lang);
  }

  for (DocOrdinal doc = 0; doc < index.docs_.size(); ++doc) {
    const Document& d = index.docs_[doc];
    auto chain_it = index.chains_.find(d.lang);
    if (chain_it == index.chains_.end()) {
      throw DataError("no analyzer for language '" + d.lang + "' (document " + d.id + ")");
    }
    for (const auto& [name, values] : d.fields) {
      if (std::find(schema.begin(), schema.end(), name) == schema.end()) {
        throw DataError("field '" + name + "' of document " + d.id + " is not in the schema");
      }
    }
    const AnalyzerChain& chain = chain_it->second;
    FieldData* all = with_all ? &index.fields_[index.field_ids_.at(lang_field(index.options_.all_field, d.lang))]
                              : nullptr;
    std::uint32_t all_base = 0;

    auto add = [doc](FieldData& f, const std::string& term, std::uint32_t pos) {
      auto& list = f.postings[term];
      if (list.empty() || list.back().doc != doc) list.push_back(Posting{doc, {}});
      list.back().positions.push_back(pos);
      ++f.lengths[doc];
      ++f.total_tokens;
    };

    for (const auto& name : schema) {
      const auto* values = d.values(name);
      if (values == nullptr) continue;
      const std::string composite = lang_field(name, d.lang);
      FieldData& f = index.fields_[index.field_ids_.at(composite)];
      auto& value_map = index.values_[composite];
      std::uint32_t base = 0;
      for (const auto& value : *values) {
        auto& holders = value_map[value];
        if (holders.empty() || holders.back() != doc) holders.push_back(doc);
        const auto tokens = chain.analyze(value);
        if (tokens.empty()) continue;
        for (const auto& tok : tokens) {
          add(f, tok.text, base + tok.position);
          if (all != nullptr) add(*all, tok.text, all_base + tok.position);
        }
        const auto span = static_cast<std::uint32_t>(tokens.size()) + kValueGap;
        base += span;
        all_base += span;
      }
    }
  }
  return index;
}

const Index::FieldData* Index::find_field(std::string_view field) const {
  auto it = field_ids_.find(field);
  return it == field_ids_.end() ? nullptr : &fields_[it->second];
}

const Index::FieldData& Index::require_field(std::string_view field) const {
  const auto* f = find_field(field);
  if (f == nullptr) throw DataError("unknown field '" + std::string(field) + "'");
  return *f;
}

bool Index::has_field(std::string_view field) const { return find_field(field) != nullptr; }

std::vector<std::string> Index::field_names() const {
  std::vector<std::string> out;
  for (const auto& [name, id] : field_ids_) out.push_back(name);
  return out;
}

const AnalyzerChain& Index::chain_for(std::string_view field) const {
  return chains_.at(require_field(field).lang);
}

std::span<const Posting> Index::postings(std::string_view field, std::string_view analyzed_term) const {
  const auto& f = require_field(field);
  auto it = f.postings.find(analyzed_term);
  if (it == f.postings.end()) return {};
  return it->second;
}

std::uint32_t Index::field_length(DocOrdinal doc, std::string_view field) const {
  return require_field(field).lengths.at(doc);
}

std::uint64_t Index::total_tokens(std::string_view field) const { return require_field(field).total_tokens; }

std::vector<std::string> Index::terms(std::string_view field) const {
  const auto& f = require_field(field);
  std::vector<std::string> out;
  out.reserve(f.postings.size());
  for (const auto& [term, list] : f.postings) out.push_back(term);
  return out;
}

std::string Index::analyze_single(const FieldData& f, std::string_view raw_term) const {
  auto analyzed = chains_.at(f.lang).terms(raw_term);
  if (analyzed.size() != 1) {
    throw DataError("term '" + std::string(raw_term) + "' analyzes to " + std::to_string(analyzed.size()) +
                    " tokens in field " + f.name + "; expected exactly one");
  }
  return std::move(analyzed.front());
}

std::size_t Index::df(std::string_view field, std::string_view raw_term) const {
  const auto& f = require_field(field);
  auto it = f.postings.find(analyze_single(f, raw_term));
  return it == f.postings.end() ? 0 : it->second.size();
}

std::vector<DocOrdinal> Index::doc_set(std::string_view field, std::span<const std::string> raw_terms,
                                       SetMode mode) const {
  const auto& f = require_field(field);
  if (raw_terms.empty()) throw DataError("doc_set needs at least one term");
  std::vector<DocOrdinal> result;
  bool first = true;
  for (const auto& raw : raw_terms) {
    std::vector<DocOrdinal> docs;
    if (auto it = f.postings.find(analyze_single(f, raw)); it != f.postings.end()) {
      docs.reserve(it->second.size());
      for (const auto& p : it->second) docs.push_back(p.doc);
    }
    if (first) {
      result = std::move(docs);
      first = false;
      continue;
    }
    std::vector<DocOrdinal> merged;
    if (mode == SetMode::all) {
      std::set_intersection(result.begin(), result.end(), docs.begin(), docs.end(), std::back_inserter(merged));
    } else {
      std::set_union(result.begin(), result.end(), docs.begin(), docs.end(), std::back_inserter(merged));
    }
    result = std::move(merged);
  }
  return result;
}

std::span<const DocOrdinal> Index::value_docs(std::string_view field, std::string_view value) const {
  require_field(field);
  auto fit = values_.find(field);
  if (fit == values_.end()) return {};
  auto it = fit->second.find(value);
  if (it == fit->second.end()) return {};
  return it->second;
}

std::vector<ScoredDoc> Index::match_sequence(std::string_view field, std::span<const std::string> analyzed,
                                             double boost) const {
  const auto& f = require_field(field);
  std::vector<ScoredDoc> out;
  if (analyzed.empty()) return out;
  const std::size_t n = docs_.size();

  std::vector<const std::vector<Posting>*> lists;
  for (const auto& term : analyzed) {
    auto it = f.postings.find(term);
    if (it == f.postings.end()) return out;
    lists.push_back(&it->second);
  }

  if (lists.size() == 1) {
    const double w = idf(n, lists[0]->size());
    out.reserve(lists[0]->size());
    for (const auto& p : *lists[0]) out.push_back(ScoredDoc{docs_[p.doc].id, p.doc, boost * tf_weight(p.tf()) * w});
    return out;
  }

  // Phrase: walk the first list, advance cursors on the others.
  std::vector<std::pair<DocOrdinal, std::size_t>> matches;
  std::vector<std::size_t> cursor(lists.size(), 0);
  for (const auto& head : *lists[0]) {
    bool all_present = true;
    for (std::size_t i = 1; i < lists.size(); ++i) {
      const auto& list = *lists[i];
      while (cursor[i] < list.size() && list[cursor[i]].doc < head.doc) ++cursor[i];
      if (cursor[i] >= list.size() || list[cursor[i]].doc != head.doc) {
        all_present = false;
        break;
      }
    }
    if (!all_present) continue;
    std::size_t count = 0;
    for (auto start : head.positions) {
      bool ok = true;
      for (std::size_t i = 1; i < lists.size() && ok; ++i) {
        const auto& pos = (*lists[i])[cursor[i]].positions;
        ok = std::binary_search(pos.begin(), pos.end(), start + static_cast<std::uint32_t>(i));
      }
      if (ok) ++count;
    }
    if (count > 0) matches.emplace_back(head.doc, count);
  }
  const double w = idf(n, matches.size());
  out.reserve(matches.size());
  for (const auto& [doc, count] : matches) out.push_back(ScoredDoc{docs_[doc].id, doc, boost * tf_weight(count) * w});
  return out;
}

std::vector<ScoredDoc> Index::search(const Query& query, std::size_t k) const {
  query.validate();
  std::vector<double> scores(docs_.size(), 0.0);
  std::vector<char> hit(docs_.size(), 0);
  for (const auto& clause : query.clauses) {
    const auto& f = require_field(clause.field);
    std::string joined;
    for (const auto& t : clause.terms) {
      if (!joined.empty()) joined.push_back(' ');
      joined += t;
    }
    const auto analyzed = chains_.at(f.lang).terms(joined);
    for (const auto& m : match_sequence(clause.field, analyzed, clause.boost)) {
      scores[m.doc] += m.score;
      hit[m.doc] = 1;
    }
  }
  std::vector<ScoredDoc> ranked;
  for (DocOrdinal d = 0; d < docs_.size(); ++d) {
    if (hit[d]) ranked.push_back(ScoredDoc{docs_[d].id, d, scores[d]});
  }
  auto better = [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  };
  if (ranked.size() > k) {
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(), better);
    ranked.resize(k);
  } else {
    std::sort(ranked.begin(), ranked.end(), better);
  }
  return ranked;
}

}  // namespace sparse_expand
