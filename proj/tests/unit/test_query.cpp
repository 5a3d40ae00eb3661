#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "sparse_expand/error.hpp"
#include "sparse_expand/query.hpp"

using namespace sparse_expand;

TEST_CASE("serialize groups clauses sharing field and boost") {
  Query q;
  q.clauses = {Clause::term("chic_all-en", "moby", 2), Clause::term("chic_all-en", "dick", 2),
               Clause::phrase("chic_all-en", {"Herman", "Melville"}), Clause::term("chic_all-en", "literature"),
               Clause::phrase("chic_all-en", {"Ishmael", "(Moby-Dick)"})};
  CHECK(serialize(q) ==
        R"q(chic_all-en:(moby OR dick)^2 OR chic_all-en:("Herman Melville" OR literature OR "Ishmael (Moby-Dick)"))q");
  CHECK(parse_query(serialize(q)) == q);
}

TEST_CASE("escapes in bare terms and phrases") {
  Query q;
  q.clauses = {Clause::term("f", "a:b(c)^\"d\\"), Clause::term("f", "OR"), Clause::phrase("f", {"say", "\"hi\""})};
  const auto s = serialize(q);
  CHECK(s == R"q(f:(a\:b\(c\)\^\"d\\ OR \OR OR "say \"hi\""))q");
  CHECK(parse_query(s) == q);
}

TEST_CASE("fractional boosts and mixed fields") {
  Query q;
  q.clauses = {Clause::term("dc:title-en", "whale", 0.25), Clause::term("chic_all-de", "wal", 1.5),
               Clause::term("chic_all-de", "meer", 1.5)};
  CHECK(serialize(q) == "dc:title-en:(whale)^0.25 OR chic_all-de:(wal OR meer)^1.5");
  CHECK(parse_query(serialize(q)) == q);
}

TEST_CASE("validation rejects degenerate queries") {
  CHECK_THROWS_AS(Query{}.validate(), DataError);
  Query zero;
  zero.clauses = {Clause::term("f", "x", 0)};
  CHECK_THROWS_AS(zero.validate(), DataError);
  Query inf;
  inf.clauses = {Clause::term("f", "x", std::numeric_limits<double>::infinity())};
  CHECK_THROWS_AS(inf.validate(), DataError);
  Query empty_text;
  empty_text.clauses = {Clause::term("f", "")};
  CHECK_THROWS_AS(empty_text.validate(), DataError);
  Query spaced;
  spaced.clauses = {Clause::phrase("f", {"a b"})};
  CHECK_THROWS_AS(spaced.validate(), DataError);
}

TEST_CASE("parse errors are reported") {
  for (const char* bad : {"", "moby", "f:(a", "f:(a OR)", "f:(\"a)", "f:(a) b:(c)", "f:(a)^x", "f:(a\"b)", ":(a)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_query(bad), DataError);
  }
  CHECK(parse_query("  f:( a  OR  b )  ").clauses.size() == 2);
}

TEST_CASE("round trip on generated queries") {
  fixtures::Rng rng(2024);
  const std::string alphabet = "abcXYZ019 :()^\"\\-'\xc3\xa9";
  const std::vector<std::string> fields = {"chic_all-en", "dc:title-en", "dc:subject-de"};
  const std::vector<double> boosts = {1.0, 2.0, 0.5, 3.75, 1e-3};
  auto word = [&](bool allow_space) {
    std::string w;
    do {
      w.clear();
      for (std::size_t i = 0, n = 1 + rng.below(6); i < n; ++i) {
        char c = alphabet[rng.below(alphabet.size())];
        if (!allow_space && c == ' ') c = '_';
        w.push_back(c);
      }
    } while (w.empty());
    if (rng.chance(5)) w = "OR";
    return w;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    Query q;
    for (std::size_t i = 0, n = 1 + rng.below(6); i < n; ++i) {
      const auto& f = fields[rng.below(fields.size())];
      const double b = boosts[rng.below(boosts.size())];
      if (rng.chance(50)) {
        q.clauses.push_back(Clause::term(f, word(true), b));
      } else {
        std::vector<std::string> words;
        for (std::size_t j = 0, m = 1 + rng.below(3); j < m; ++j) words.push_back(word(false));
        q.clauses.push_back(Clause::phrase(f, words, b));
      }
    }
    const auto s = serialize(q);
    CAPTURE(s);
    CHECK(parse_query(s) == q);
  }
}
