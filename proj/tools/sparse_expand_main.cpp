// sparse-expand: command-line front end.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparse_expand/corpus.hpp"
#include "sparse_expand/docsim.hpp"
#include "sparse_expand/error.hpp"
#include "sparse_expand/eval.hpp"
#include "sparse_expand/expand.hpp"
#include "sparse_expand/index.hpp"
#include "sparse_expand/io.hpp"
#include "sparse_expand/log.hpp"
#include "sparse_expand/pipeline.hpp"
#include "sparse_expand/str_recommender.hpp"
#include "sparse_expand/suggestion.hpp"
#include "sparse_expand/wiki_lead.hpp"

namespace se = sparse_expand;
namespace fs = std::filesystem;

namespace {

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    se::io::write_file_atomic(out, content);
  }
}

se::TableFormat table_format(const std::string& f) { return f == "tsv" ? se::TableFormat::tsv : se::TableFormat::text; }

CLI::Option* add_format(CLI::App* cmd, std::string& format) {
  return cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"tsv", "table"}));
}

se::AnalyzerSet analyzers(const std::string& en_stop, const std::string& de_stop) {
  se::AnalyzerSet set;
  set.emplace("en", en_stop.empty() ? se::AnalyzerChain::for_language("en")
                                    : se::AnalyzerChain::for_language("en", se::load_stopwords(en_stop)));
  set.emplace("de", de_stop.empty() ? se::AnalyzerChain::for_language("de")
                                    : se::AnalyzerChain::for_language("de", se::load_stopwords(de_stop)));
  return set;
}

std::vector<se::SuggestionSet> load_all_suggestions(const std::vector<std::string>& files) {
  std::vector<se::SuggestionSet> sets;
  for (const auto& f : files) {
    for (auto& s : se::load_suggestions(f)) sets.push_back(std::move(s));
  }
  return sets;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query expansion and semantic enrichment for sparse metadata collections"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(se::kToolVersion));
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "Per-topic progress on stderr");
  app.add_flag("-q,--quiet", quiet, "Suppress warnings");

  std::string format = "table";
  std::string out;
  bool lax = false;

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Corpus reports")->require_subcommand(1);
  std::string docs_path;
  auto* stats = corpus->add_subcommand("stats", "Field coverage of a document file");
  stats->add_option("--docs", docs_path, "Line-delimited JSON documents")->required();
  stats->add_flag("--lax", lax, "Skip malformed lines and drop unknown fields");
  add_format(stats, format);
  std::string topics_path;
  auto* tstats = corpus->add_subcommand("topic-stats", "Word counts of topic titles and descriptions");
  tstats->add_option("--topics", topics_path, "Line-delimited JSON topics")->required();
  add_format(tstats, format);

  // index
  auto* index_cmd = app.add_subcommand("index", "Build or query an index")->require_subcommand(1);
  std::string index_path;
  std::string en_stop, de_stop;
  auto* build = index_cmd->add_subcommand("build", "Build an index snapshot");
  build->add_option("--docs", docs_path, "Line-delimited JSON documents")->required();
  build->add_option("--out", out, "Snapshot file")->required();
  build->add_flag("--lax", lax, "Skip malformed lines and drop unknown fields");
  build->add_option("--stopwords-en", en_stop, "English stopword list")->check(CLI::ExistingFile);
  build->add_option("--stopwords-de", de_stop, "German stopword list")->check(CLI::ExistingFile);
  auto* search = index_cmd->add_subcommand("search", "Run queries against a snapshot");
  std::string query_expr, queries_path, run_tag = "search";
  std::size_t depth = se::kRunDepth;
  search->add_option("--index", index_path, "Snapshot file")->required();
  auto* q_opt = search->add_option("--query", query_expr, "One query expression");
  auto* qs_opt = search->add_option("--queries,--query-file", queries_path, "Query file, topic_id<TAB>expression");
  q_opt->excludes(qs_opt);
  search->add_option("-k,--k", depth, "Results per query");
  search->add_option("--tag", run_tag, "Run tag for TREC output");
  search->add_option("--out", out, "Output file (default stdout)");

  // suggest
  auto* suggest = app.add_subcommand("suggest", "Concept suggestions")->require_subcommand(1);
  std::size_t k = 10;
  std::string similarity = "jaccard";
  auto* s_str = suggest->add_subcommand("str", "Co-occurrence recommender over the index");
  s_str->add_option("--index", index_path, "Snapshot file")->required();
  s_str->add_option("--topics", topics_path, "Topics")->required();
  s_str->add_option("--k", k, "Suggestions per topic");
  s_str->add_option("--similarity", similarity, "jaccard or log")->check(CLI::IsMember({"jaccard", "log"}));
  s_str->add_option("--out", out, "Suggestion file (default stdout)");
  std::string articles_dir;
  std::size_t min_links = se::wikitext::kDefaultMinLinks;
  auto* s_wiki = suggest->add_subcommand("wiki-lead", "Links from the lead of the matched article");
  s_wiki->add_option("--articles", articles_dir, "Directory of .wiki files")->required();
  s_wiki->add_option("--topics", topics_path, "Topics")->required();
  s_wiki->add_option("--k", k, "Suggestions per topic");
  s_wiki->add_option("--min-links", min_links, "Fall back to the whole article below this many lead links");
  s_wiki->add_option("--out", out, "Suggestion file (default stdout)");
  std::string corpus_dir, seeds_path, lang = "en", label = "WIKI_SIM";
  std::size_t n_words = se::kDefaultImportantWords;
  auto* s_doc = suggest->add_subcommand("docsim", "Nearest documents of a seed article");
  s_doc->add_option("--corpus", corpus_dir, "Directory of .txt files")->required();
  s_doc->add_option("--seeds", seeds_path, "topic_id<TAB>seed title lines")->required();
  s_doc->add_option("--k", k, "Suggestions per topic");
  s_doc->add_option("--n", n_words, "Important words per document");
  s_doc->add_option("--lang", lang, "Analyzer language")->check(CLI::IsMember({"en", "de"}));
  s_doc->add_option("--label", label, "System label")->check(CLI::IsMember({"WIKI_SIM", "WIKI_BACK"}));
  s_doc->add_option("--out", out, "Suggestion file (default stdout)");

  // combo
  std::vector<std::string> inputs;
  auto* combo = app.add_subcommand("combo", "Round-robin merge of suggestion files");
  combo->add_option("--inputs", inputs, "Suggestion files")->required();
  combo->add_option("--k", k, "Concepts per topic");
  combo->add_option("--out", out, "Suggestion file (default stdout)");

  // expand
  double boost = 2.0;
  std::size_t max_concepts = 10;
  std::string field;
  auto* expand = app.add_subcommand("expand", "Build expanded queries");
  expand->add_option("--topics", topics_path, "Topics")->required();
  expand->add_option("--suggestions", inputs, "Suggestion files");
  expand->add_option("--boost", boost, "Title term boost");
  expand->add_option("--max-concepts", max_concepts, "Suggestions used per topic");
  expand->add_option("--field", field, "Target field (default chic_all-<lang>)");
  expand->add_option("--out", out, "Query file (default stdout)");

  // run
  std::string config_path;
  std::vector<std::string> systems;
  std::string out_dir;
  std::optional<std::size_t> o_k, o_n;
  std::optional<double> o_boost;
  std::string o_lang, o_similarity;
  auto* run = app.add_subcommand("run", "Full pipeline from a config file");
  run->add_option("--config", config_path, "JSON config")->required();
  run->add_option("--systems", systems, "Override systems")
      ->check(CLI::IsMember({"WIKI_ENTITY", "WIKI_SIM", "WIKI_BACK", "STR", "COMBO"}));
  run->add_option("--out", out_dir, "Override output directory");
  run->add_option("--lang", o_lang, "Override language");
  run->add_option("--k", o_k, "Override k");
  run->add_option("--n", o_n, "Override important-word count");
  run->add_option("--boost", o_boost, "Override title boost");
  run->add_option("--similarity", o_similarity, "Override STR similarity");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate runs and suggestions")->require_subcommand(1);
  std::string run_path, qrels_path, sugg_path, judg_path;
  auto* adhoc = eval->add_subcommand("adhoc", "MAP and R-Precision");
  adhoc->add_option("--run", run_path, "TREC run")->required();
  adhoc->add_option("--qrels", qrels_path, "TREC qrels")->required();
  adhoc->add_option("--depth", depth, "Ranks considered per topic");
  add_format(adhoc, format);
  auto* se_cmd = eval->add_subcommand("se", "Weak and strong suggestion precision");
  se_cmd->add_option("--suggestions", sugg_path, "Suggestion file")->required();
  se_cmd->add_option("--judgments", judg_path, "topic_id<TAB>rank<TAB>grade file")->required();
  add_format(se_cmd, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  se::log::set_level(quiet ? se::log::Level::quiet : verbose ? se::log::Level::info : se::log::Level::warn);

  try {
    if (stats->parsed()) {
      auto ingested = se::ingest_documents(fs::path(docs_path), se::default_schema(), lax);
      if (ingested.summary.rejected || ingested.summary.dropped_fields) {
        se::log::warn(fmt::format("{} lines rejected, {} unknown fields dropped", ingested.summary.rejected,
                                  ingested.summary.dropped_fields));
      }
      emit("", se::format_coverage(se::coverage_report(ingested.documents, se::default_schema()), table_format(format)));
    } else if (tstats->parsed()) {
      emit("", se::format_topic_stats(se::topic_stats(se::load_topics(topics_path)), table_format(format)));
    } else if (build->parsed()) {
      auto ingested = se::ingest_documents(fs::path(docs_path), se::default_schema(), lax);
      auto index = se::Index::build(std::move(ingested.documents), analyzers(en_stop, de_stop));
      index.save(out);
      se::log::info(fmt::format("indexed {} documents into {}", index.size(), out));
    } else if (search->parsed()) {
      const auto index = se::Index::load(index_path);
      std::vector<std::pair<std::string, se::Query>> queries;
      if (!queries_path.empty()) {
        queries = se::parse_query_file(se::io::read_file(queries_path));
      } else if (!query_expr.empty()) {
        queries.emplace_back("q", se::parse_query(query_expr));
      } else {
        throw se::UsageError("index search needs --query or --queries");
      }
      se::Run result;
      for (const auto& [id, q] : queries) {
        std::vector<std::pair<std::string, double>> hits;
        for (auto& h : index.search(q, depth)) hits.emplace_back(std::move(h.doc_id), h.score);
        if (!hits.empty()) result[id] = se::make_run_records(id, hits, run_tag);
      }
      emit(out, se::format_run(result));
    } else if (s_str->parsed()) {
      const auto index = se::Index::load(index_path);
      se::CooccurConfig cfg;
      cfg.similarity = se::parse_similarity(similarity);
      cfg.top_k = k;
      std::vector<se::SuggestionSet> sets;
      for (const auto& t : se::load_topics(topics_path)) {
        try {
          sets.push_back(se::suggest_str(index, t, cfg));
        } catch (const se::DataError& e) {
          se::log::warn(fmt::format("STR topic {}: {}", t.id, e.what()));
          sets.push_back(se::make_suggestion_set(t.id, se::System::str, {}));
        }
      }
      emit(out, se::format_suggestions(std::move(sets)));
    } else if (s_wiki->parsed()) {
      const auto store = se::ArticleStore::load(articles_dir);
      std::vector<se::SuggestionSet> sets;
      for (const auto& t : se::load_topics(topics_path)) sets.push_back(se::suggest_wiki_lead(store, t, k, min_links));
      emit(out, se::format_suggestions(std::move(sets)));
    } else if (s_doc->parsed()) {
      const auto corpus_docs = se::SimCorpus::load(corpus_dir, se::AnalyzerChain::for_language(lang), n_words);
      const auto system = se::parse_system(label);
      std::vector<se::SuggestionSet> sets;
      for (const auto& [topic, seed] : se::load_seeds(seeds_path)) {
        std::vector<se::ConceptSuggestion> items;
        if (corpus_docs.find(seed) < 0) {
          se::log::warn(fmt::format("topic {}: seed not found: {}", topic, seed));
        } else {
          items = se::suggest_docsim(corpus_docs, seed, k, system);
        }
        sets.push_back(se::make_suggestion_set(topic, system, std::move(items)));
      }
      emit(out, se::format_suggestions(std::move(sets)));
    } else if (combo->parsed()) {
      std::map<std::string, std::vector<se::SuggestionSet>> by_topic;
      for (auto& s : load_all_suggestions(inputs)) by_topic[s.topic_id].push_back(std::move(s));
      std::vector<se::SuggestionSet> merged;
      for (auto& [_, sets] : by_topic) merged.push_back(se::combo_merge(std::move(sets), k));
      emit(out, se::format_suggestions(std::move(merged)));
    } else if (expand->parsed()) {
      se::ExpansionConfig cfg;
      cfg.title_boost = boost;
      cfg.max_concepts = max_concepts;
      cfg.target_field = field;
      cfg.validate();
      // Several files are concatenated per topic in argument order.
      std::map<std::string, se::SuggestionSet> by_topic;
      for (auto& s : load_all_suggestions(inputs)) {
        auto [it, fresh] = by_topic.try_emplace(s.topic_id, s);
        if (!fresh) it->second.items.insert(it->second.items.end(), s.items.begin(), s.items.end());
      }
      std::vector<std::pair<std::string, se::Query>> queries;
      for (const auto& t : se::load_topics(topics_path)) {
        auto it = by_topic.find(t.id);
        const auto chain = se::AnalyzerChain::for_language(t.lang);
        queries.emplace_back(t.id, se::build_query(t, it == by_topic.end() ? nullptr : &it->second, cfg, chain));
      }
      emit(out, se::format_query_file(queries));
    } else if (run->parsed()) {
      auto cfg = se::PipelineConfig::load(config_path);
      if (!systems.empty()) {
        cfg.systems.clear();
        for (const auto& s : systems) cfg.systems.push_back(se::parse_system(s));
      }
      if (!out_dir.empty()) cfg.out = out_dir;
      if (!o_lang.empty()) cfg.lang = o_lang;
      if (o_k) cfg.k = *o_k;
      if (o_n) cfg.n = *o_n;
      if (o_boost) cfg.boost = *o_boost;
      if (!o_similarity.empty()) cfg.similarity = o_similarity;
      for (const auto& o : se::run_pipeline(cfg)) {
        std::cout << fmt::format("{}\t{}\t{}", se::system_name(o.system), o.run.string(), o.suggestions.string());
        if (o.map) std::cout << fmt::format("\tMAP={:.4f}", *o.map);
        std::cout << "\n";
      }
    } else if (adhoc->parsed()) {
      const auto report = se::evaluate_run(se::load_run(run_path), se::load_qrels(qrels_path),
                                           se::kRelevanceThreshold, depth);
      emit("", se::format_metric_report(report, table_format(format)));
    } else if (se_cmd->parsed()) {
      const auto sets = se::load_suggestions(sugg_path);
      const auto reports = se::evaluate_se(sets, se::load_se_judgments(judg_path));
      emit("", se::format_se_reports(reports, table_format(format)));
    }
  } catch (const se::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const se::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
