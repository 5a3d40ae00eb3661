#include "fixtures.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "sparse_expand/analysis.hpp"
#include "sparse_expand/log.hpp"

namespace fixtures {

namespace {
// Expected warnings from negative cases would drown the test report.
const bool quiet_logs = (sparse_expand::log::set_level(sparse_expand::log::Level::quiet), true);
}  // namespace

se::Document doc(std::string id, FieldList fields, std::string lang) {
  se::Document d;
  d.id = std::move(id);
  d.lang = std::move(lang);
  for (auto& [name, values] : fields) d.fields[name] = std::move(values);
  return d;
}

se::Index index_of(std::vector<se::Document> docs) { return se::Index::build(std::move(docs), se::default_analyzers()); }

se::Topic topic(std::string id, std::string title, std::string lang) {
  return se::Topic{std::move(id), std::move(title), std::nullopt, std::move(lang)};
}

std::string random_word(std::size_t i) {
  // Consonant-vowel syllables ending in a consonant cluster Porter leaves alone.
  static const char* onset[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "t", "v", "z"};
  static const char* vowel[] = {"a", "o", "u"};
  std::string w = onset[i % 13];
  w += vowel[(i / 13) % 3];
  w += onset[(i / 39) % 13];
  w += vowel[(i / 507) % 3];
  w += "rk";
  return w;
}

std::string random_concept(std::size_t i) {
  std::string c = "Concept " + random_word(i + 500);
  if (i % 3 == 0) c += " " + random_word(i + 900);
  return c;
}

std::vector<se::Document> random_corpus(Rng& rng, const RandomCorpusSpec& spec) {
  std::vector<se::Document> docs;
  for (std::size_t d = 0; d < spec.docs; ++d) {
    FieldList fields;
    auto words = [&](std::size_t lo, std::size_t hi) {
      std::string s;
      for (std::size_t i = 0, n = lo + rng.below(hi - lo + 1); i < n; ++i) {
        if (!s.empty()) s += ' ';
        s += random_word(rng.below(spec.words));
      }
      return s;
    };
    fields.push_back({"dc:title", {words(1, 4)}});
    if (rng.chance(60)) fields.push_back({"dc:description", {words(2, 8), words(1, 3)}});
    std::vector<std::string> subjects;
    for (std::size_t i = 0, n = rng.below(4); i < n; ++i) subjects.push_back(random_concept(rng.below(spec.concepts)));
    if (!subjects.empty()) fields.push_back({"dc:subject", subjects});
    if (rng.chance(30)) fields.push_back({"enrichment:concept_label", {random_concept(rng.below(spec.concepts))}});
    const bool german = rng.chance(spec.german_percent);
    docs.push_back(doc("d" + std::to_string(1000 + d), std::move(fields), german ? "de" : "en"));
  }
  return docs;
}

std::vector<se::Document> chic010_corpus() {
  std::vector<se::Document> docs;
  auto add = [&](std::string title, std::string description, std::vector<std::string> subjects,
                 std::vector<std::string> labels = {}) {
    FieldList f = {{"dc:title", {std::move(title)}}};
    if (!description.empty()) f.push_back({"dc:description", {std::move(description)}});
    if (!subjects.empty()) f.push_back({"dc:subject", std::move(subjects)});
    if (!labels.empty()) f.push_back({"enrichment:concept_label", std::move(labels)});
    docs.push_back(doc("c" + std::to_string(100 + docs.size()), std::move(f)));
  };
  // Documents matching both query words, in title or description.
  add("Film poster", "Printed in Canada", {"poster", "Cinema and Theatre", "popular media"});
  add("Canadian film festival poster", "Toronto, Canada", {"poster", "Cinema and Theatre", "popular media", "photograph"});
  add("Canada on film", "", {"poster", "popular media"}, {"Cinema and Theatre"});
  add("Silent films", "Made in Canada", {"poster"}, {"Cinema and Theatre"});
  add("Film still", "Canada, 1931", {"poster", "film still"});
  add("Newsreel", "A film shot in Canada", {"film still", "Canada"});
  // Other holders of the candidate values.
  add("Theatre bill", "Paris", {"Cinema and Theatre"});
  add("Radio broadcast", "", {"popular media"});
  add("Comic strip", "", {"popular media"});
  for (int i = 0; i < 8; ++i) add("Studio still " + std::to_string(i), "Hollywood", {"film still"});
  for (int i = 0; i < 10; ++i) add("Lake landscape " + std::to_string(i), "Canada", {"Canada", "landscape"});
  for (int i = 0; i < 20; ++i) add("Portrait " + std::to_string(i), "", {"photograph"});
  for (int i = 0; i < 5; ++i) add("Film reel " + std::to_string(i), "Germany", {"film", "archive"});
  return docs;
}

EvalFixture random_eval_fixture(Rng& rng) {
  EvalFixture f;
  const std::size_t pool = 5 + rng.below(60);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < pool; ++i) ids.push_back("doc" + std::to_string(i));
  for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
  const std::size_t depth = rng.below(pool + 1);
  f.ranked.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(depth));
  for (const auto& id : ids) {
    if (rng.chance(40)) f.grades[id] = static_cast<int>(rng.below(3));
  }
  for (std::size_t i = 0, n = rng.below(15); i < n; ++i) f.se_grades.push_back(static_cast<int>(rng.below(3)));
  return f;
}

std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    out[std::filesystem::relative(e.path(), dir).generic_string()].assign(std::istreambuf_iterator<char>(in), {});
  }
  return out;
}

void write_documents(const std::filesystem::path& path, const std::vector<se::Document>& docs) {
  std::string out;
  for (const auto& d : docs) out += nlohmann::json{{"id", d.id}, {"lang", d.lang}, {"fields", d.fields}}.dump() + "\n";
  write(path, out);
}

void write_topics(const std::filesystem::path& path, const std::vector<se::Topic>& topics) {
  std::string out;
  for (const auto& t : topics) out += nlohmann::json{{"id", t.id}, {"lang", t.lang}, {"title", t.title}}.dump() + "\n";
  write(path, out);
}

CliResult run_cli(const std::vector<std::string>& args) {
  auto quote = [](const std::string& a) {
    std::string q = "'";
    for (char c : a) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
  };
  TempDir tmp;
  std::string cmd = quote(SE_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>" + quote((tmp / "stderr").string());
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(tmp / "stderr", std::ios::binary);
  r.err.assign(std::istreambuf_iterator<char>(in), {});
  return r;
}

se::Query random_query(Rng& rng, std::size_t vocab) {
  const std::vector<std::string> fields = {"chic_all-en", "dc:title-en", "dc:description-en", "chic_all-de"};
  se::Query q;
  for (std::size_t i = 0, n = 1 + rng.below(5); i < n; ++i) {
    const auto& f = fields[rng.below(fields.size())];
    const double boost = rng.chance(30) ? 2.0 : 1.0;
    if (rng.chance(60)) {
      q.clauses.push_back(se::Clause::term(f, random_word(rng.below(vocab)), boost));
    } else {
      std::vector<std::string> words;
      for (std::size_t j = 0, m = 2 + rng.below(2); j < m; ++j) words.push_back(random_word(rng.below(vocab)));
      q.clauses.push_back(se::Clause::phrase(f, words, boost));
    }
  }
  return q;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::path(SE_TEST_TMP_DIR) /
          ("t" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path data_dir() { return SE_TEST_DATA_DIR; }

void write(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

}  // namespace fixtures
