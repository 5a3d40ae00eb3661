#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "sparse_expand/analysis.hpp"
#include "sparse_expand/error.hpp"
#include "sparse_expand/text.hpp"

using namespace sparse_expand;

namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace

TEST_CASE("English chain on the possessive example") {
  const auto en = AnalyzerChain::for_language("en");
  const auto tokens = en.analyze("Moby Dick's Whale");
  // Porter maps the trailing y of "moby" to i.
  CHECK(texts(tokens) == std::vector<std::string>{"mobi", "dick", "whale"});
  CHECK(tokens[0].position == 0);
  CHECK(tokens[1].position == 1);
  CHECK(tokens[2].position == 2);
  CHECK(en.analyze("Dick\xe2\x80\x99s") == std::vector<Token>{{"dick", 0}});
}

TEST_CASE("all-stopword input and empty input produce nothing") {
  const auto en = AnalyzerChain::for_language("en");
  CHECK(en.analyze("the of and").empty());
  CHECK(en.analyze("").empty());
  CHECK(en.analyze(" ,;- ").empty());
  CHECK(AnalyzerChain::for_language("de").analyze("der die und").empty());
}

TEST_CASE("German chain normalizes and light-stems") {
  const auto de = AnalyzerChain::for_language("de");
  CHECK(texts(de.analyze("Gem\xc3\xa4lde Stra\xc3\x9f" "e")) == std::vector<std::string>{"gemald", "strass"});
  CHECK(german_normalize("stra\xc3\x9f" "e") == "strasse");
  CHECK(german_normalize("abc") == "abc");
  CHECK(german_normalize("\xc3\xbc" "ber") == "uber");
  CHECK(german_light_stem("kindern") == "kind");
  CHECK(german_light_stem("hauses") == "haus");
  CHECK(german_light_stem("haus") == "haus");    // would leave 3
  CHECK(german_light_stem("bilder") == "bild");
  CHECK(german_light_stem("autos") == "auto");
  CHECK(german_light_stem("tage") == "tage");    // stem "tag" too short
}

TEST_CASE("tokenizer splits on non-word runs and keeps inner apostrophes") {
  CHECK(tokenize("Moby-Dick; or, The Whale") == std::vector<std::string>{"Moby", "Dick", "or", "The", "Whale"});
  CHECK(tokenize("'quoted' rock'n'roll") == std::vector<std::string>{"quoted", "rock'n'roll"});
  CHECK(tokenize("Caf\xc3\xa9 1851") == std::vector<std::string>{"Caf\xc3\xa9", "1851"});
  CHECK(tokenize("\xd0\xb7\xd0\xb2\xd1\x83\xd0\xba, \xce\xae\xcf\x87\xce\xbf\xcf\x82").size() == 2);
}

TEST_CASE("Porter examples") {
  CHECK(porter_stem("caresses") == "caress");
  CHECK(porter_stem("sky") == "sky");
  CHECK(porter_stem("relational") == "relat");
  CHECK(porter_stem("ponies") == "poni");
  CHECK(porter_stem("hopping") == "hop");
  CHECK(porter_stem("generalizations") == "gener");
  CHECK(porter_stem("a") == "a");
  CHECK(porter_stem("is") == "is");
}

TEST_CASE("Porter agrees with the reference vocabulary") {
  std::ifstream in(fixtures::data_dir() / "porter_vocabulary.tsv");
  REQUIRE(in);
  std::string line;
  std::size_t total = 0, wrong = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const auto word = line.substr(0, tab);
    const auto expected = line.substr(tab + 1);
    ++total;
    if (porter_stem(word) != expected) {
      if (++wrong <= 10) UNSCOPED_INFO(word << " -> " << porter_stem(word) << ", expected " << expected);
    }
  }
  CHECK(total > 10000);
  CHECK(wrong == 0);
}

TEST_CASE("positions are consecutive after stopword removal") {
  const auto en = AnalyzerChain::for_language("en");
  fixtures::Rng rng(11);
  const std::vector<std::string> pool = {"the", "whale", "of", "Ahab's", "sea", "and", "ships", "-", "a", "Moby"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    for (std::size_t i = 0, n = rng.below(12); i < n; ++i) s += pool[rng.below(pool.size())] + " ";
    const auto tokens = en.analyze(s);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      CHECK(tokens[i].position == i);
      CHECK_FALSE(tokens[i].text.empty());
    }
    CHECK(en.analyze(s) == tokens);
  }
}

TEST_CASE("individual stages are idempotent") {
  fixtures::Rng rng(5);
  const std::vector<std::string> pool = {"Stra\xc3\x9f" "e", "\xc3\x9c" "BER", "Moby", "dick's", "the", "\xd0\x97\xd0\x92",
                                         "Gem\xc3\xa4lde", "b\xc3\xb6se"};
  const auto en = AnalyzerChain::for_language("en");
  for (int trial = 0; trial < 200; ++trial) {
    const auto& w = pool[rng.below(pool.size())];
    const auto lower = text::lowercase(w);
    CHECK(text::lowercase(lower) == lower);
    const auto norm = german_normalize(lower);
    CHECK(german_normalize(norm) == norm);
    const auto poss = strip_english_possessive(w);
    CHECK(strip_english_possessive(poss) == poss);
    // Stopword removal: surviving words stay surviving.
    if (!en.is_stopword(w)) CHECK_FALSE(en.is_stopword(lower));
  }
}

TEST_CASE("stopword files") {
  const auto set = parse_stopwords("# comment\nThe\n\n  Whale  # trailing\nof\n");
  CHECK(set == StopwordSet{"of", "the", "whale"});
  const auto en = AnalyzerChain::for_language("en", set);
  CHECK(en.terms("the whale swims") == std::vector<std::string>{"swim"});
  CHECK(en.is_stopword("WHALE"));
  CHECK(builtin_stopwords("en").size() >= 100);
  CHECK(builtin_stopwords("de").size() >= 100);
  CHECK_THROWS_AS(AnalyzerChain::for_language("fr"), UsageError);
}

TEST_CASE("stage names round trip and chains reassemble") {
  const auto en = AnalyzerChain::for_language("en");
  std::vector<Stage> stages;
  for (auto s : en.stages()) stages.push_back(parse_stage(stage_name(s)));
  CHECK(AnalyzerChain::from_parts("en", stages, en.stopwords()) == en);
  CHECK_THROWS(AnalyzerChain::from_parts("en", {Stage::lowercase}, {}));
  CHECK_THROWS(parse_stage("stemmer"));
}
