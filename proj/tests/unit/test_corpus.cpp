#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <sstream>

#include "fixtures.hpp"
#include "sparse_expand/corpus.hpp"
#include "sparse_expand/error.hpp"

using namespace sparse_expand;

namespace {

IngestResult ingest(const std::string& content, bool lax = false) {
  std::istringstream in(content);
  return ingest_documents(in, default_schema(), lax);
}

std::size_t count_of(const CoverageReport& r, const std::string& field) {
  for (const auto& f : r.fields) {
    if (f.field == field) return f.count;
  }
  FAIL("field missing: " << field);
  return 0;
}

int percent_of(const CoverageReport& r, const std::string& field) {
  return CoverageReport::percent(count_of(r, field), r.corpus_size);
}

}  // namespace

TEST_CASE("schema has the coverage table fields") {
  const auto& s = default_schema();
  CHECK(s.size() == 55);
  CHECK(std::find(s.begin(), s.end(), "dc:contributor") != s.end());
  CHECK(std::find(s.begin(), s.end(), "dcterms:spatial") != s.end());
  CHECK(std::find(s.begin(), s.end(), "europeana:country") != s.end());
  CHECK(std::find(s.begin(), s.end(), "enrichment:concept_label") != s.end());
  std::vector<std::string> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("valid lines are ingested") {
  const auto r = ingest(R"({"id":"a","lang":"en","fields":{"dc:title":["Moby Dick"]}}
{"id":"b","lang":"en","fields":{"dc:title":["  Whale  ", ""],"dc:subject":["novel"]}}

{"id":"c","lang":"de","fields":{"dc:title":["   "]}}
)");
  REQUIRE(r.documents.size() == 3);
  CHECK(r.summary.accepted == 3);
  CHECK(r.summary.rejected == 0);
  CHECK(*r.documents[1].values("dc:title") == std::vector<std::string>{"Whale"});
  // An all-blank value list leaves the field out entirely.
  CHECK(r.documents[2].values("dc:title") == nullptr);
  CHECK(r.documents[2].fields.empty());
}

TEST_CASE("strict mode aborts on malformed lines and unknown fields") {
  CHECK_THROWS_AS(ingest("{not json}\n"), DataError);
  CHECK_THROWS_AS(ingest(R"({"id":"a","lang":"en","fields":{"dc:bogus":["x"]}})"), DataError);
  CHECK_THROWS_AS(ingest(R"({"lang":"en","fields":{}})"), DataError);
  CHECK_THROWS_AS(ingest(R"({"id":"a","lang":"en","fields":{"dc:title":"x"}})"), DataError);
}

TEST_CASE("lax mode skips bad lines and drops unknown fields") {
  const auto r = ingest(R"({"id":"a","lang":"en","fields":{"dc:title":["x"],"dc:bogus":["y"]}}
{broken
{"id":"b","lang":"en","fields":{"dc:title":[1]}}
{"id":"c","lang":"en","fields":{}}
)",
                        true);
  CHECK(r.summary.accepted == 2);
  CHECK(r.summary.rejected == 2);
  CHECK(r.summary.dropped_fields == 1);
  REQUIRE(r.summary.reasons.size() == 2);
  CHECK(r.summary.reasons[0].starts_with("line 2:"));
  CHECK(r.documents[0].fields.size() == 1);
}

TEST_CASE("duplicate ids abort in both modes and report the first duplicate") {
  std::string content;
  fixtures::Rng rng(3);
  std::vector<int> ids;
  for (int i = 0; i < 93; ++i) ids.push_back(i);
  for (int i = 0; i < 7; ++i) ids.push_back(static_cast<int>(rng.below(93)));
  // Place the duplicates after all originals; the first duplicate is at line 94.
  for (int id : ids) content += R"({"id":"doc)" + std::to_string(id) + R"(","lang":"en","fields":{}})" "\n";
  for (bool lax : {false, true}) {
    try {
      ingest(content, lax);
      FAIL("expected duplicate id error");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).starts_with("line 94: duplicate document id \"doc" + std::to_string(ids[93])));
    }
  }
}

TEST_CASE("re-ingesting the same content is deterministic") {
  const std::string content = R"({"id":"a","lang":"en","fields":{"dc:title":["x"],"dc:subject":["s1","s2"]}}
{"id":"b","lang":"en","fields":{"dc:title":["y"]}}
)";
  CHECK(ingest(content).documents == ingest(content).documents);
}

TEST_CASE("coverage percentages") {
  std::vector<Document> docs;
  for (int i = 0; i < 10; ++i) docs.push_back(fixtures::doc("d" + std::to_string(i), {{"europeana:country", {"Italy"}}}));
  const auto r = coverage_report(docs, default_schema());
  CHECK(percent_of(r, "europeana:country") == 100);
  CHECK(percent_of(r, "dcterms:hasPart") == 0);
  CHECK(r.fields.size() == default_schema().size());
  CHECK_THROWS_WITH(coverage_report(std::vector<Document>{}, default_schema()), "empty corpus");
}

TEST_CASE("coverage on the 50-document fixture") {
  const auto r = coverage_report(ingest_documents(fixtures::data_dir() / "coverage_50.jsonl", default_schema(), false).documents,
                                 default_schema());
  CHECK(r.corpus_size == 50);
  CHECK(count_of(r, "dc:contributor") == 7);
  CHECK(percent_of(r, "dc:contributor") == 14);
  CHECK(percent_of(r, "europeana:country") == 100);
}

TEST_CASE("percent rounds halves up and stays in range") {
  CHECK(CoverageReport::percent(1, 8) == 13);   // 12.5
  CHECK(CoverageReport::percent(1, 3) == 33);
  CHECK(CoverageReport::percent(2, 3) == 67);
  CHECK(CoverageReport::percent(1, 200) == 1);  // 0.5
  CHECK(CoverageReport::percent(1, 201) == 0);
  for (std::size_t n = 1; n <= 60; ++n) {
    for (std::size_t c = 0; c <= n; ++c) {
      const int p = CoverageReport::percent(c, n);
      CHECK(p >= 0);
      CHECK(p <= 100);
      CHECK(std::abs(p - 100.0 * c / n) <= 0.5);
    }
  }
}

TEST_CASE("coverage counts do not depend on document order") {
  fixtures::Rng rng(9);
  auto docs = fixtures::random_corpus(rng, {60, 20, 10, 0});
  const auto a = coverage_report(docs, default_schema());
  std::reverse(docs.begin(), docs.end());
  std::swap(docs[3], docs[40]);
  const auto b = coverage_report(docs, default_schema());
  for (std::size_t i = 0; i < a.fields.size(); ++i) CHECK(a.fields[i].count == b.fields[i].count);
}

TEST_CASE("topic statistics") {
  std::vector<Topic> two = {fixtures::topic("1", "falkland islands"), fixtures::topic("2", "moby dick")};
  auto s = topic_stats(two);
  CHECK(s.title.mean == 2.0);
  CHECK(s.title.median == 2.0);
  CHECK(s.title.min == 2);
  CHECK(s.title.max == 2);

  std::vector<Topic> one = {fixtures::topic("1", "unarmed")};
  s = topic_stats(one);
  CHECK(s.description.mean == 0);
  CHECK(s.description.min == 0);
  CHECK(s.description.max == 0);
  CHECK(s.title.mean == s.title.median);
  CHECK(static_cast<double>(s.title.min) == s.title.median);
  CHECK(s.title.max == s.title.min);

  CHECK_THROWS_AS(topic_stats(std::vector<Topic>{}), DataError);
  CHECK(summarize_counts({1, 2, 3, 10}).median == 2.5);
}

TEST_CASE("topic statistics on the 50-topic fixture") {
  const auto topics = load_topics(fixtures::data_dir() / "topics_50.jsonl");
  REQUIRE(topics.size() == 50);
  const auto s = topic_stats(topics);
  CHECK(fmt::format("{:.2f}", s.title.mean) == "1.94");
  CHECK(s.title.median == 2);
  CHECK(s.title.min == 1);
  CHECK(s.title.max == 6);
  CHECK(fmt::format("{:.2f}", s.description.mean) == "2.84");
  CHECK(s.description.median == 0);
  CHECK(s.description.max == 25);
  const auto tsv = format_topic_stats(s, TableFormat::tsv);
  CHECK(tsv.find("title\t1.94\t2\t1\t6\n") != std::string::npos);
  CHECK(tsv.find("description\t2.84\t0\t0\t25\n") != std::string::npos);
}

TEST_CASE("topics parsing") {
  std::istringstream in(R"({"id":"CHIC-009","lang":"en","title":"falkland islands"}
{"id":"CHIC-012","lang":"en","title":"moby dick","description":"  the novel  "}
)");
  const auto topics = parse_topics(in);
  REQUIRE(topics.size() == 2);
  CHECK_FALSE(topics[0].description.has_value());
  CHECK(topics[1].description == "the novel");
  std::istringstream bad(R"({"id":"x","lang":"en","title":"  "})");
  CHECK_THROWS_AS(parse_topics(bad), DataError);
  std::istringstream dup(R"({"id":"x","lang":"en","title":"a"}
{"id":"x","lang":"en","title":"b"})");
  CHECK_THROWS_AS(parse_topics(dup), DataError);
}
