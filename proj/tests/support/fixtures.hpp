#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sparse_expand/corpus.hpp"
#include "sparse_expand/index.hpp"
#include "sparse_expand/query.hpp"

namespace fixtures {

namespace se = sparse_expand;

using FieldList = std::vector<std::pair<std::string, std::vector<std::string>>>;

se::Document doc(std::string id, FieldList fields, std::string lang = "en");
se::Index index_of(std::vector<se::Document> docs);
se::Topic topic(std::string id, std::string title, std::string lang = "en");

// Draws with plain modulo so fixture sequences are identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Small-vocabulary corpus for oracle comparisons. Title and description
// words come from `words`, subject values from `concepts`.
struct RandomCorpusSpec {
  std::size_t docs = 200;
  std::size_t words = 30;
  std::size_t concepts = 25;
  unsigned german_percent = 0;
};
std::vector<se::Document> random_corpus(Rng& rng, const RandomCorpusSpec& spec);
std::string random_word(std::size_t i);  // deterministic word #i, never a stopword, stable under stemming
std::string random_concept(std::size_t i);

// 1-5 term or phrase clauses over en/de composite and single fields.
se::Query random_query(Rng& rng, std::size_t vocab);

// Unique directory below the build tree, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Corpus where "poster", "Cinema and Theatre" and "popular media" co-occur
// most with {film, canada}: 6 query documents, Jaccard 5/6, 4/7 and 3/8.
std::vector<se::Document> chic010_corpus();

// One topic's ranked run, its graded judgments and a list of suggestion
// grades, drawn at random for metric comparisons.
struct EvalFixture {
  std::vector<std::string> ranked;
  std::map<std::string, int> grades;
  std::vector<int> se_grades;
};
EvalFixture random_eval_fixture(Rng& rng);

// Relative path -> content of every regular file below dir.
std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& dir);

// Line-delimited JSON in the ingest format.
void write_documents(const std::filesystem::path& path, const std::vector<se::Document>& docs);
void write_topics(const std::filesystem::path& path, const std::vector<se::Topic>& topics);

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};
// Runs the built command-line tool with shell-quoted arguments.
CliResult run_cli(const std::vector<std::string>& args);

std::filesystem::path data_dir();
void write(const std::filesystem::path& p, const std::string& content);

}  // namespace fixtures
