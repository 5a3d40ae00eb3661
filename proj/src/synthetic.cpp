#include "sparse_expand/synthetic.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>
#include <json.hpp>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sparse_expand/io.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Draws use plain modulo so that the sequence does not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 gen_;
};

constexpr std::array<const char*, 16> kSyllables = {"ka", "lo", "mi", "ra", "ten", "vos", "dul", "per",
                                                    "sa", "gor", "bel", "nax", "ti", "fen", "wu", "zar"};

std::string make_word(Rng& rng) {
  std::string w;
  const std::size_t n = 2 + rng.below(2);
  for (std::size_t i = 0; i < n; ++i) w += kSyllables[rng.below(kSyllables.size())];
  return w;
}

std::string capitalize(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

struct Theme {
  std::vector<std::string> words;     // topical vocabulary
  std::vector<std::string> concepts;  // subject headings, mostly two words
};

std::string join_words(Rng& rng, const std::vector<std::string>& pool, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    if (!out.empty()) out += ' ';
    out += rng.pick(pool);
  }
  return out;
}

}  // namespace

void write_synthetic(const fs::path& dir, const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  std::set<std::string> used;
  auto fresh_word = [&] {
    for (;;) {
      auto w = make_word(rng);
      if (used.insert(w).second) return w;
    }
  };

  std::vector<std::string> common;
  for (int i = 0; i < 60; ++i) common.push_back(fresh_word());
  std::vector<Theme> themes(spec.themes);
  for (auto& t : themes) {
    for (int i = 0; i < 12; ++i) t.words.push_back(fresh_word());
    for (int i = 0; i < 8; ++i) {
      t.concepts.push_back(i % 3 == 2 ? capitalize(fresh_word())
                                      : capitalize(fresh_word()) + " " + fresh_word());
    }
  }

  fs::create_directories(dir);

  // Documents: each belongs to one theme and mixes in common words.
  std::vector<std::size_t> doc_theme(spec.documents);
  std::string docs;
  for (std::size_t d = 0; d < spec.documents; ++d) {
    const std::size_t th = rng.below(themes.size());
    doc_theme[d] = th;
    const Theme& t = themes[th];
    json fields;
    fields["dc:title"] = {join_words(rng, t.words, 1 + rng.below(2)) + " " + join_words(rng, common, rng.below(2))};
    if (rng.chance(60)) fields["dc:description"] = {join_words(rng, t.words, 2 + rng.below(4)) + " " +
                                                    join_words(rng, common, 2 + rng.below(6))};
    json subjects = json::array();
    for (std::size_t i = 0, n = 1 + rng.below(3); i < n; ++i) subjects.push_back(rng.pick(t.concepts));
    if (rng.chance(15)) subjects.push_back(rng.pick(themes[rng.below(themes.size())].concepts));
    fields["dc:subject"] = subjects;
    if (rng.chance(40)) fields["enrichment:concept_label"] = {rng.pick(t.concepts)};
    if (rng.chance(14)) fields["dc:contributor"] = {capitalize(fresh_word())};
    fields["europeana:country"] = {rng.chance(70) ? "England" : "Norway"};
    fields["dc:type"] = {rng.chance(50) ? "image" : "text"};
    json rec = {{"id", fmt::format("doc{:05}", d)}, {"lang", "en"}, {"fields", fields}};
    docs += rec.dump() + "\n";
  }
  io::write_file_atomic(dir / "docs.jsonl", docs);

  // Topics draw their title from one theme; the article corpora and the
  // relevance judgments follow that theme.
  std::string topics;
  std::string seeds;
  std::string qrels;
  std::string judgments;
  fs::create_directories(dir / "articles");
  fs::create_directories(dir / "sim");
  fs::create_directories(dir / "back");
  auto write_article = [&](const fs::path& sub, const std::string& title, const std::string& ext,
                           const std::string& body) {
    io::write_file_atomic(dir / sub / (text::percent_encode(title) + ext), body);
  };

  std::vector<std::string> sim_titles;
  for (std::size_t q = 0; q < spec.topics; ++q) {
    const std::size_t th = q % themes.size();
    const Theme& t = themes[th];
    const std::string title = join_words(rng, t.words, 1 + rng.below(2));
    const std::string id = fmt::format("T{:03}", q + 1);
    json topic = {{"id", id}, {"lang", "en"}, {"title", title}};
    if (rng.chance(50)) topic["description"] = join_words(rng, t.words, 5);
    topics += topic.dump() + "\n";

    // Encyclopedia article named like the topic, plus a near miss.
    std::string wiki = "{{Infobox topic|name=" + title + "}}\n";
    for (std::size_t i = 0; i < t.concepts.size(); ++i) {
      wiki += fmt::format("Word [[{}]] appears with {} ", t.concepts[i], rng.pick(t.words));
      if (i == 3) wiki += "[[File:pic.jpg|thumb|a [[caption]]]] ";
    }
    wiki += "\n== History ==\n[[" + rng.pick(common) + "]] more [[Category:Things]]\n";
    write_article("articles", capitalize(title), ".wiki", wiki);
    write_article("articles", capitalize(title) + " " + rng.pick(common), ".wiki",
                  "Short stub about [[" + rng.pick(t.concepts) + "]].\n");

    const std::string seed_title = capitalize(title) + " (topic)";
    seeds += id + "\t" + seed_title + "\n";
    const std::string seed_body = join_words(rng, t.words, 60) + " " + join_words(rng, common, 20);
    write_article("sim", seed_title, ".txt", seed_body);
    write_article("back", seed_title, ".txt", seed_body);

    for (std::size_t d = 0; d < spec.documents; ++d) {
      if (doc_theme[d] == th) {
        qrels += fmt::format("{} 0 doc{:05} {}\n", id, d, rng.chance(30) ? 2 : (rng.chance(50) ? 1 : 0));
      } else if (rng.chance(2)) {
        qrels += fmt::format("{} 0 doc{:05} 0\n", id, d);
      }
    }
    for (std::size_t r = 1; r <= 10; ++r) judgments += fmt::format("{}\t{}\t{}\n", id, r, rng.below(3));
  }
  io::write_file_atomic(dir / "topics.jsonl", topics);
  io::write_file_atomic(dir / "seeds.tsv", seeds);
  io::write_file_atomic(dir / "qrels.txt", qrels);
  io::write_file_atomic(dir / "judgments.tsv", judgments);

  // Background documents for the two similarity corpora.
  for (std::size_t i = 0; i < spec.sim_documents; ++i) {
    const Theme& t = themes[rng.below(themes.size())];
    const std::string title = capitalize(fresh_word()) + " " + std::to_string(i);
    write_article("sim", title, ".txt", join_words(rng, t.words, 40) + " " + join_words(rng, common, 40));
    const Theme& u = themes[rng.below(themes.size())];
    write_article("back", title, ".txt", join_words(rng, u.words, 50) + " " + join_words(rng, common, 30));
  }

  json config = {{"version", 1},
                 {"lang", "en"},
                 {"docs", "docs.jsonl"},
                 {"topics", "topics.jsonl"},
                 {"articles", "articles"},
                 {"sim_corpus", "sim"},
                 {"back_corpus", "back"},
                 {"seeds", "seeds.tsv"},
                 {"qrels", "qrels.txt"},
                 {"judgments", "judgments.tsv"},
                 {"out", "out"},
                 {"systems", {"WIKI_ENTITY", "WIKI_SIM", "WIKI_BACK", "STR", "COMBO"}},
                 {"k", 10},
                 {"n", 20},
                 {"boost", 2.0},
                 {"similarity", "jaccard"}};
  io::write_file_atomic(dir / "config.json", config.dump(2) + "\n");
}

}  // namespace sparse_expand
