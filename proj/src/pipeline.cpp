#include "sparse_expand/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <functional>
#include <map>
#include <set>

#include "sparse_expand/docsim.hpp"
#include "sparse_expand/error.hpp"
#include "sparse_expand/eval.hpp"
#include "sparse_expand/expand.hpp"
#include "sparse_expand/index.hpp"
#include "sparse_expand/io.hpp"
#include "sparse_expand/log.hpp"
#include "sparse_expand/parallel.hpp"
#include "sparse_expand/str_recommender.hpp"
#include "sparse_expand/wiki_lead.hpp"

namespace sparse_expand {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::array<std::string_view, 21> kKeys = {
    "version", "lang",       "docs",   "index",      "topics", "articles", "sim_corpus",
    "back_corpus", "seeds",  "qrels",  "judgments",  "out",    "systems",  "k",
    "n",       "boost",      "similarity", "min_links", "depth", "lax",   "comment"};

fs::path resolve(const json& j, const char* key, const fs::path& base) {
  if (!j.contains(key)) return {};
  fs::path p(j.at(key).get<std::string>());
  if (p.empty() || p.is_absolute()) return p;
  return base / p;
}

constexpr std::array<System, 5> kRunOrder = {System::wiki_entity, System::wiki_sim, System::wiki_back, System::str,
                                             System::combo};

bool wants(const PipelineConfig& cfg, System s) {
  return std::find(cfg.systems.begin(), cfg.systems.end(), s) != cfg.systems.end();
}

std::string lower_name(System s) {
  std::string name(system_name(s));
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  return name;
}

fs::path system_dir(const PipelineConfig& cfg, System s) { return cfg.out / cfg.lang / lower_name(s); }

}  // namespace

PipelineConfig PipelineConfig::from_json(std::string_view text, const fs::path& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  std::vector<std::string> unknown;
  for (const auto& [key, _] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) unknown.push_back(key);
  }
  if (!unknown.empty()) throw UsageError("unknown config keys: " + fmt::format("{}", fmt::join(unknown, ", ")));

  PipelineConfig c;
  try {
    c.version = j.value("version", 0);
    c.lang = j.value("lang", c.lang);
    c.docs = resolve(j, "docs", base);
    c.index = resolve(j, "index", base);
    c.topics = resolve(j, "topics", base);
    c.articles = resolve(j, "articles", base);
    c.sim_corpus = resolve(j, "sim_corpus", base);
    c.back_corpus = resolve(j, "back_corpus", base);
    c.seeds = resolve(j, "seeds", base);
    c.qrels = resolve(j, "qrels", base);
    c.judgments = resolve(j, "judgments", base);
    c.out = resolve(j, "out", base);
    if (j.contains("systems")) {
      for (const auto& s : j.at("systems")) {
        try {
          c.systems.push_back(parse_system(s.get<std::string>()));
        } catch (const DataError& e) {
          throw UsageError(e.what());
        }
      }
    }
    c.k = j.value("k", c.k);
    c.n = j.value("n", c.n);
    c.boost = j.value("boost", c.boost);
    c.similarity = j.value("similarity", c.similarity);
    c.min_links = j.value("min_links", c.min_links);
    c.depth = j.value("depth", c.depth);
    c.lax = j.value("lax", c.lax);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config has a value of the wrong type: ") + e.what());
  }
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& file) {
  std::string text;
  try {
    text = io::read_file(file);
  } catch (const DataError&) {
    throw UsageError("cannot read config " + file.string());
  }
  return from_json(text, file.parent_path());
}

std::string PipelineConfig::canonical_json() const {
  json j;
  j["version"] = version;
  j["lang"] = lang;
  j["docs"] = docs.string();
  j["index"] = index.string();
  j["topics"] = topics.string();
  j["articles"] = articles.string();
  j["sim_corpus"] = sim_corpus.string();
  j["back_corpus"] = back_corpus.string();
  j["seeds"] = seeds.string();
  j["qrels"] = qrels.string();
  j["judgments"] = judgments.string();
  j["out"] = out.string();
  json systems = json::array();
  for (auto s : kRunOrder) {
    if (wants(*this, s)) systems.push_back(std::string(system_name(s)));
  }
  j["systems"] = systems;
  j["k"] = k;
  j["n"] = n;
  j["boost"] = boost;
  j["similarity"] = similarity;
  j["min_links"] = min_links;
  j["depth"] = depth;
  j["lax"] = lax;
  return j.dump();
}

std::vector<std::string> validate_config(const PipelineConfig& cfg) {
  std::vector<std::string> errors;
  auto need_file = [&](const fs::path& p, const char* key, const char* why) {
    if (p.empty()) {
      errors.push_back(fmt::format("{}: required {}", key, why));
    } else if (!fs::is_regular_file(p)) {
      errors.push_back(fmt::format("{}: file not found: {}", key, p.string()));
    }
  };
  auto need_dir = [&](const fs::path& p, const char* key, const char* why) {
    if (p.empty()) {
      errors.push_back(fmt::format("{}: required {}", key, why));
    } else if (!fs::is_directory(p)) {
      errors.push_back(fmt::format("{}: directory not found: {}", key, p.string()));
    }
  };
  auto optional_file = [&](const fs::path& p, const char* key) {
    if (!p.empty() && !fs::is_regular_file(p)) errors.push_back(fmt::format("{}: file not found: {}", key, p.string()));
  };

  if (cfg.version != kConfigVersion) {
    errors.push_back(fmt::format("version: expected {}, got {}", kConfigVersion, cfg.version));
  }
  if (cfg.lang != "en" && cfg.lang != "de") errors.push_back("lang: must be en or de, got '" + cfg.lang + "'");
  if (cfg.index.empty()) {
    need_file(cfg.docs, "docs", "to build the search index");
  } else {
    need_file(cfg.index, "index", "");
  }
  need_file(cfg.topics, "topics", "to read the topics");
  if (cfg.out.empty()) errors.push_back("out: required output directory");
  if (cfg.systems.empty()) errors.push_back("systems: at least one system is required");
  if (wants(cfg, System::wiki_entity)) need_dir(cfg.articles, "articles", "by WIKI_ENTITY");
  if (wants(cfg, System::wiki_sim)) need_dir(cfg.sim_corpus, "sim_corpus", "by WIKI_SIM");
  if (wants(cfg, System::wiki_back)) need_dir(cfg.back_corpus, "back_corpus", "by WIKI_BACK");
  if (wants(cfg, System::wiki_sim) || wants(cfg, System::wiki_back)) need_file(cfg.seeds, "seeds", "by WIKI_SIM and WIKI_BACK");
  if (wants(cfg, System::combo)) {
    bool any = false;
    for (auto s : kSourceSystems) {
      any = any || wants(cfg, s) || (!cfg.out.empty() && fs::is_regular_file(system_dir(cfg, s) / "suggestions.tsv"));
    }
    if (!any) {
      errors.push_back("systems: COMBO needs suggestions from another system; request one or run it first");
    }
  }
  optional_file(cfg.qrels, "qrels");
  optional_file(cfg.judgments, "judgments");
  if (cfg.k < 1) errors.push_back("k: must be at least 1");
  if (cfg.n < 1) errors.push_back("n: must be at least 1");
  if (cfg.depth < 1) errors.push_back("depth: must be at least 1");
  if (!(cfg.boost > 0) || !std::isfinite(cfg.boost)) errors.push_back(fmt::format("boost: must be positive, got {}", cfg.boost));
  if (cfg.similarity != "jaccard" && cfg.similarity != "log") {
    errors.push_back("similarity: must be jaccard or log, got '" + cfg.similarity + "'");
  }
  return errors;
}

namespace {

struct Context {
  const PipelineConfig& cfg;
  const Index& index;
  const AnalyzerChain& chain;
  const std::vector<Topic>& topics;
};

using SetsByTopic = std::vector<SuggestionSet>;  // parallel to Context::topics

SetsByTopic per_topic(const Context& ctx, const std::function<SuggestionSet(const Topic&)>& fn) {
  SetsByTopic out(ctx.topics.size());
  parallel_for(ctx.topics.size(), [&](std::size_t i) {
    out[i] = fn(ctx.topics[i]);
    log::info(fmt::format("topic {}: {} suggestions", ctx.topics[i].id, out[i].items.size()));
  });
  return out;
}

SetsByTopic docsim_sets(const Context& ctx, const fs::path& dir, System label,
                        const std::map<std::string, std::string>& seeds) {
  const SimCorpus corpus = SimCorpus::load(dir, ctx.chain, ctx.cfg.n);
  return per_topic(ctx, [&](const Topic& t) {
    std::vector<ConceptSuggestion> items;
    auto seed = seeds.find(t.id);
    if (seed == seeds.end()) {
      log::warn(fmt::format("{} topic {}: no seed title", system_name(label), t.id));
    } else if (corpus.find(seed->second) < 0) {
      log::warn(fmt::format("{} topic {}: seed not found: {}", system_name(label), t.id, seed->second));
    } else {
      items = suggest_docsim(corpus, seed->second, ctx.cfg.k, label);
    }
    return make_suggestion_set(t.id, label, std::move(items));
  });
}

Run search_runs(const Context& ctx, const SetsByTopic& sets, System system) {
  ExpansionConfig ecfg;
  ecfg.title_boost = ctx.cfg.boost;
  ecfg.max_concepts = ctx.cfg.k;
  std::vector<std::vector<RunRecord>> records(ctx.topics.size());
  const std::string tag(system_name(system));
  parallel_for(ctx.topics.size(), [&](std::size_t i) {
    const Topic& t = ctx.topics[i];
    Query q;
    try {
      q = build_query(t, &sets[i], ecfg, ctx.chain);
    } catch (const DataError& e) {
      log::warn(fmt::format("{} topic {}: {}", tag, t.id, e.what()));
      return;
    }
    std::vector<std::pair<std::string, double>> hits;
    for (auto& h : ctx.index.search(q, ctx.cfg.depth)) hits.emplace_back(std::move(h.doc_id), h.score);
    records[i] = make_run_records(t.id, hits, tag);
  });
  Run run;
  for (std::size_t i = 0; i < ctx.topics.size(); ++i) {
    if (!records[i].empty()) run[ctx.topics[i].id] = std::move(records[i]);
  }
  return run;
}

}  // namespace

std::vector<PipelineOutput> run_pipeline(const PipelineConfig& cfg) {
  if (auto errors = validate_config(cfg); !errors.empty()) {
    throw UsageError(fmt::format("invalid configuration:\n  {}", fmt::join(errors, "\n  ")));
  }

  std::vector<Topic> topics;
  for (auto& t : load_topics(cfg.topics)) {
    if (t.lang == cfg.lang) topics.push_back(std::move(t));
  }
  if (topics.empty()) throw DataError("no " + cfg.lang + " topics in " + cfg.topics.string());
  std::sort(topics.begin(), topics.end(), [](const Topic& a, const Topic& b) { return a.id < b.id; });

  std::optional<Index> index;
  if (!cfg.index.empty()) {
    index = Index::load(cfg.index);
  } else {
    auto ingested = ingest_documents(cfg.docs, default_schema(), cfg.lax);
    log::info(fmt::format("ingested {} documents ({} rejected)", ingested.summary.accepted, ingested.summary.rejected));
    index = Index::build(std::move(ingested.documents), default_analyzers());
  }
  const auto chain_it = index->analyzers().find(cfg.lang);
  if (chain_it == index->analyzers().end()) throw DataError("index has no analyzer for " + cfg.lang);
  const Context ctx{cfg, *index, chain_it->second, topics};

  std::optional<Qrels> qrels;
  if (!cfg.qrels.empty()) qrels = load_qrels(cfg.qrels);
  std::optional<SeJudgments> judgments;
  if (!cfg.judgments.empty()) judgments = load_se_judgments(cfg.judgments);
  std::map<std::string, std::string> seeds;
  if (!cfg.seeds.empty()) seeds = load_seeds(cfg.seeds);

  std::map<System, SetsByTopic> produced;
  std::vector<PipelineOutput> outputs;
  json manifest_outputs = json::array();
  auto record_file = [&](const fs::path& p, const std::string& content) {
    io::write_file_atomic(p, content);
    manifest_outputs.push_back({{"path", fs::relative(p, cfg.out).generic_string()},
                                {"fnv1a", fmt::format("{:016x}", io::fnv1a(content))}});
  };

  for (auto system : kRunOrder) {
    if (!wants(cfg, system)) continue;
    log::info(fmt::format("running {}", system_name(system)));
    SetsByTopic sets;
    switch (system) {
      case System::wiki_entity: {
        const ArticleStore store = ArticleStore::load(cfg.articles, ctx.chain);
        sets = per_topic(ctx, [&](const Topic& t) { return suggest_wiki_lead(store, t, cfg.k, cfg.min_links); });
        break;
      }
      case System::wiki_sim:
        sets = docsim_sets(ctx, cfg.sim_corpus, System::wiki_sim, seeds);
        break;
      case System::wiki_back:
        sets = docsim_sets(ctx, cfg.back_corpus, System::wiki_back, seeds);
        break;
      case System::str: {
        CooccurConfig ccfg;
        ccfg.similarity = parse_similarity(cfg.similarity);
        ccfg.top_k = cfg.k;
        sets = per_topic(ctx, [&](const Topic& t) {
          try {
            return suggest_str(*index, t, ccfg);
          } catch (const DataError& e) {
            log::warn(fmt::format("STR topic {}: {}", t.id, e.what()));
            return make_suggestion_set(t.id, System::str, {});
          }
        });
        break;
      }
      case System::combo: {
        std::map<System, std::map<std::string, SuggestionSet>> inputs;
        for (auto src : kSourceSystems) {
          if (auto it = produced.find(src); it != produced.end()) {
            for (const auto& s : it->second) inputs[src][s.topic_id] = s;
          } else if (auto file = system_dir(cfg, src) / "suggestions.tsv"; fs::is_regular_file(file)) {
            for (auto& s : load_suggestions(file)) {
              if (s.system == src) inputs[src][s.topic_id] = std::move(s);
            }
          }
        }
        sets = per_topic(ctx, [&](const Topic& t) {
          std::vector<SuggestionSet> mine;
          for (const auto& [_, by_topic] : inputs) {
            if (auto it = by_topic.find(t.id); it != by_topic.end()) mine.push_back(it->second);
          }
          if (mine.empty()) return make_suggestion_set(t.id, System::combo, {});
          return combo_merge(std::move(mine), cfg.k);
        });
        break;
      }
    }

    const fs::path dir = system_dir(cfg, system);
    fs::create_directories(dir);
    PipelineOutput po{system, dir / "run.trec", dir / "suggestions.tsv", std::nullopt};
    record_file(po.suggestions, format_suggestions(sets));
    const Run run = search_runs(ctx, sets, system);
    record_file(po.run, format_run(run));
    if (qrels) {
      const auto report = evaluate_run(run, *qrels, kRelevanceThreshold, cfg.depth);
      po.map = report.map;
      record_file(dir / "metrics.tsv", format_metric_report(report, TableFormat::tsv));
    }
    if (judgments) {
      const auto reports = evaluate_se(sets, *judgments);
      record_file(dir / "se_metrics.tsv", format_se_reports(reports, TableFormat::tsv));
    }
    produced[system] = std::move(sets);
    outputs.push_back(std::move(po));
  }

  json manifest;
  manifest["tool"] = "sparse-expand";
  manifest["version"] = std::string(kToolVersion);
  const auto canonical = cfg.canonical_json();
  manifest["config_hash"] = fmt::format("{:016x}", io::fnv1a(canonical));
  manifest["config"] = json::parse(canonical);
  manifest["outputs"] = manifest_outputs;
  io::write_file_atomic(cfg.out / cfg.lang / "manifest.json", manifest.dump(2) + "\n");
  return outputs;
}

}  // namespace sparse_expand
