#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "sparse_expand/wikitext.hpp"
#include "wikitext_cases.hpp"

using namespace sparse_expand;

TEST_CASE("strip fixtures") {
  REQUIRE(fixtures::strip_cases().size() >= 25);
  for (const auto& c : fixtures::strip_cases()) {
    INFO(c.name);
    const auto r = wikitext::strip_markup(c.input);
    CHECK(r.text == c.expected);
    CHECK(r.unbalanced == c.unbalanced);
  }
}

TEST_CASE("lead fixtures") {
  for (const auto& c : fixtures::lead_cases()) {
    INFO(c.name);
    const auto r = wikitext::extract_lead(c.input, c.min_links);
    CHECK(r.links == c.links);
    CHECK(r.used_full_article == c.used_full_article);
  }
}

TEST_CASE("lead text excludes the heading") {
  const auto r = wikitext::extract_lead("{{Infobox}}Intro [[A]].\n== Plot ==\nBody", 1);
  CHECK(r.lead == "Intro [[A]].\n");
  CHECK_FALSE(r.unbalanced);
  CHECK(wikitext::extract_lead("Intro {{broken", 1).unbalanced);
}

TEST_CASE("normalize_link_target") {
  CHECK(wikitext::normalize_link_target("Sea story") == "Sea story");
  CHECK(wikitext::normalize_link_target(" A \t B |label") == "A B");
  CHECK(wikitext::normalize_link_target("fr:Moby Dick") == std::nullopt);
  CHECK(wikitext::normalize_link_target("zh-yue:X") == std::nullopt);
  CHECK(wikitext::normalize_link_target("Template:Cite") == std::nullopt);
  CHECK(wikitext::normalize_link_target("  ") == std::nullopt);
  CHECK(wikitext::normalize_link_target("X#y") == "X");
}

TEST_CASE("extract_links on raw text picks inner links") {
  CHECK(wikitext::extract_links("[[File:x|[[Inner]]]] [[B]] [[B]]") == std::vector<std::string>{"Inner", "B"});
  CHECK(wikitext::extract_links("[[open only").empty());
}

TEST_CASE("strip is idempotent on fuzzed input") {
  fixtures::Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const auto w = fixtures::fuzz_wikitext(rng);
    const auto once = wikitext::strip_markup(w);
    const auto twice = wikitext::strip_markup(once.text);
    INFO(w);
    REQUIRE(twice.text == once.text);
    REQUIRE(once.text.size() <= w.size());
  }
}

TEST_CASE("lead links are stable under appending below the first heading") {
  fixtures::Rng rng(5);
  const std::string lead = "[[Herman Melville]] and [[Whale|whales]] at [[Sea]].\n== Plot ==\n";
  const auto base = wikitext::extract_lead(lead + "[[Ahab]]");
  REQUIRE_FALSE(base.used_full_article);
  for (int i = 0; i < 200; ++i) {
    const auto r = wikitext::extract_lead(lead + "[[Ahab]]" + fixtures::fuzz_wikitext(rng));
    REQUIRE(r.links == base.links);
  }
}
