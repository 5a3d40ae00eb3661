#include "sparse_expand/expand.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>

#include "sparse_expand/error.hpp"
#include "sparse_expand/index.hpp"
#include "sparse_expand/log.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

void ExpansionConfig::validate() const {
  if (!(title_boost > 0) || !std::isfinite(title_boost)) throw UsageError("title boost must be positive");
}

std::string ExpansionConfig::field_for(const Topic& topic) const {
  return target_field.empty() ? lang_field("chic_all", topic.lang) : target_field;
}

namespace {

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Query build_query(const Topic& topic, const SuggestionSet* suggestions, const ExpansionConfig& cfg,
                  const AnalyzerChain& chain) {
  cfg.validate();
  const std::string field = cfg.field_for(topic);
  Query q;
  for (const auto& tok : tokenize(topic.title)) {
    if (!chain.analyze_token(tok).empty()) q.clauses.push_back(Clause::term(field, tok, cfg.title_boost));
  }
  if (q.clauses.empty()) throw DataError("empty title: topic " + topic.id);

  if (!suggestions) return q;
  std::set<std::string> seen;
  std::size_t added = 0;
  for (const auto& s : suggestions->items) {
    if (added >= cfg.max_concepts) break;
    const auto text = std::string(text::trim(s.text));
    if (!seen.insert(text::fold_key(text)).second) continue;
    const auto analyzed = chain.terms(text);
    if (analyzed.empty()) {
      log::warn(fmt::format("topic {}: suggestion '{}' has no indexable tokens, dropped", topic.id, text));
      continue;
    }
    if (has_space(text) || analyzed.size() > 1) {
      q.clauses.push_back(Clause::phrase(field, text::split_whitespace(text)));
    } else {
      q.clauses.push_back(Clause::term(field, text));
    }
    ++added;
  }
  return q;
}

SuggestionSet combo_merge(std::vector<SuggestionSet> sets, std::size_t max_concepts) {
  if (sets.empty()) throw DataError("COMBO needs at least one input set");
  for (const auto& s : sets) {
    if (s.topic_id != sets.front().topic_id) {
      throw DataError("COMBO inputs mix topics " + sets.front().topic_id + " and " + s.topic_id);
    }
  }
  auto order = [](System s) {
    auto it = std::find(kSourceSystems.begin(), kSourceSystems.end(), s);
    return static_cast<std::size_t>(it - kSourceSystems.begin());
  };
  std::stable_sort(sets.begin(), sets.end(),
                   [&](const SuggestionSet& a, const SuggestionSet& b) { return order(a.system) < order(b.system); });

  std::size_t depth = 0;
  for (const auto& s : sets) depth = std::max(depth, s.items.size());
  std::set<std::string> seen;
  std::vector<ConceptSuggestion> items;
  for (std::size_t r = 0; r < depth && items.size() < max_concepts; ++r) {
    for (const auto& s : sets) {
      if (items.size() >= max_concepts) break;
      if (r >= s.items.size()) continue;
      const auto& text = s.items[r].text;
      if (!seen.insert(text::fold_key(text)).second) continue;
      items.push_back({text, 1.0 / static_cast<double>(items.size() + 1), 0, System::combo});
    }
  }
  return make_suggestion_set(sets.front().topic_id, System::combo, std::move(items));
}

std::string format_query_file(std::span<const std::pair<std::string, Query>> queries) {
  std::string out;
  for (const auto& [id, q] : queries) {
    out += id;
    out += '\t';
    out += serialize(q);
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::string, Query>> parse_query_file(std::string_view content) {
  std::vector<std::pair<std::string, Query>> out;
  std::size_t line_no = 0;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw DataError("query line " + std::to_string(line_no) + ": missing tab");
    out.emplace_back(std::string(line.substr(0, tab)), parse_query(line.substr(tab + 1)));
  }
  return out;
}

}  // namespace sparse_expand
