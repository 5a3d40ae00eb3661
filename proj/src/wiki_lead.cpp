#include "sparse_expand/wiki_lead.hpp"

#include <algorithm>
#include <fmt/format.h>

#include "sparse_expand/error.hpp"
#include "sparse_expand/io.hpp"
#include "sparse_expand/log.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

std::string_view match_stage_name(MatchStage s) {
  switch (s) {
    case MatchStage::original: return "original";
    case MatchStage::stopword_free: return "stopword_free";
    case MatchStage::permutation: return "permutation";
    case MatchStage::single_word: return "single_word";
  }
  return "unknown";
}

std::string title_key(std::string_view title) {
  std::string key;
  for (const auto& tok : tokenize(title)) {
    if (!key.empty()) key.push_back(' ');
    key += text::lowercase(tok);
  }
  return key;
}

ArticleStore::ArticleStore(std::vector<Article> articles, AnalyzerChain chain)
    : articles_(std::move(articles)), chain_(std::move(chain)), title_field_(lang_field("title", chain_.lang())) {
  std::sort(articles_.begin(), articles_.end(), [](const Article& a, const Article& b) { return a.title < b.title; });
  std::vector<Document> docs;
  docs.reserve(articles_.size());
  for (std::size_t i = 0; i < articles_.size(); ++i) {
    const auto& a = articles_[i];
    if (!by_title_.emplace(a.title, i).second) throw DataError("duplicate article title: " + a.title);
    Document d;
    d.id = a.title;
    d.lang = chain_.lang();
    d.fields["title"] = {a.title};
    docs.push_back(std::move(d));
    exact_keys_[title_key(a.title)].push_back(static_cast<DocOrdinal>(i));
  }
  if (!docs.empty()) {
    AnalyzerSet chains;
    chains.emplace(chain_.lang(), chain_);
    titles_ = Index::build(std::move(docs), chains, IndexOptions{{"title"}, ""});
  }
}

ArticleStore ArticleStore::load(const std::filesystem::path& dir, AnalyzerChain chain) {
  if (!std::filesystem::is_directory(dir)) throw DataError("article directory not found: " + dir.string());
  std::vector<Article> articles;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".wiki") continue;
    articles.push_back(Article{text::percent_decode(entry.path().stem().string()), io::read_file(entry.path())});
  }
  return ArticleStore(std::move(articles), std::move(chain));
}

const Article* ArticleStore::find(std::string_view title) const {
  auto it = by_title_.find(title);
  return it == by_title_.end() ? nullptr : &articles_[it->second];
}

namespace {

struct Candidate {
  DocOrdinal doc = 0;
  double score = 0;
};

}  // namespace

std::optional<MatchResult> ArticleStore::match(std::string_view topic_title) const {
  if (text::trim(topic_title).empty()) throw DataError("empty topic title");
  if (!titles_) return std::nullopt;
  const Index& index = *titles_;

  std::optional<Candidate> best;
  auto offer = [&](DocOrdinal doc, double score) {
    if (!(score > 0)) return;
    if (!best) {
      best = Candidate{doc, score};
      return;
    }
    const auto& cur = articles_[best->doc].title;
    const auto& cand = articles_[doc].title;
    if (score > best->score || (score == best->score && (cand.size() < cur.size() ||
                                                         (cand.size() == cur.size() && cand < cur)))) {
      best = Candidate{doc, score};
    }
  };
  auto result = [&](MatchStage stage) {
    return MatchResult{articles_[best->doc].title, stage, best->score};
  };

  const auto analyzed = chain_.terms(topic_title);

  // (a) original
  if (auto it = exact_keys_.find(title_key(topic_title)); it != exact_keys_.end() && !analyzed.empty()) {
    std::map<DocOrdinal, double> scores;
    for (const auto& m : index.match_sequence(title_field_, analyzed)) scores[m.doc] = m.score;
    for (auto doc : it->second) {
      if (auto s = scores.find(doc); s != scores.end()) offer(doc, s->second);
    }
    if (best) return result(MatchStage::original);
  }
  if (analyzed.empty()) return std::nullopt;

  // (b) stopword_free
  for (const auto& m : index.match_sequence(title_field_, analyzed)) {
    if (index.field_length(m.doc, title_field_) == analyzed.size()) offer(m.doc, m.score);
  }
  if (best) return result(MatchStage::stopword_free);

  std::vector<std::string> distinct = analyzed;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  // (c) permutation
  if (distinct.size() <= kMaxPermutationTokens) {
    auto order = distinct;
    do {
      for (const auto& m : index.match_sequence(title_field_, order)) offer(m.doc, m.score);
    } while (std::next_permutation(order.begin(), order.end()));
    if (best) return result(MatchStage::permutation);
  }

  // (d) single_word
  for (const auto& token : distinct) {
    const std::string one[] = {token};
    for (const auto& m : index.match_sequence(title_field_, one)) offer(m.doc, m.score);
  }
  if (best) return result(MatchStage::single_word);
  return std::nullopt;
}

SuggestionSet suggest_wiki_lead(const ArticleStore& store, const Topic& topic, std::size_t k, std::size_t min_links) {
  std::vector<ConceptSuggestion> items;
  auto m = store.match(topic.title);
  if (!m) {
    log::info(fmt::format("WIKI_ENTITY {}: no article matches '{}'", topic.id, topic.title));
    return make_suggestion_set(topic.id, System::wiki_entity, {});
  }
  const Article* article = store.find(m->title);
  auto lead = wikitext::extract_lead(article->wikitext, min_links);
  if (lead.unbalanced) log::warn(fmt::format("article '{}' has unbalanced markup", article->title));
  for (auto& link : lead.links) {
    if (items.size() >= k) break;
    const double rank = static_cast<double>(items.size() + 1);
    items.push_back(ConceptSuggestion{std::move(link), 1.0 / rank, 0, System::wiki_entity});
  }
  log::info(fmt::format("WIKI_ENTITY {}: '{}' -> '{}' ({}), {} links", topic.id, topic.title, m->title,
                        match_stage_name(m->stage), items.size()));
  return make_suggestion_set(topic.id, System::wiki_entity, std::move(items));
}

}  // namespace sparse_expand
