#include "sparse_expand/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <set>
#include <unordered_set>

#include "sparse_expand/error.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

using json = nlohmann::json;

const std::vector<std::string>* Document::values(const std::string& field) const {
  auto it = fields.find(field);
  return it == fields.end() ? nullptr : &it->second;
}

const std::vector<std::string>& default_schema() {
  static const std::vector<std::string> kSchema = {
      "dc:contributor",
      "dc:coverage",
      "dc:creator",
      "dc:date",
      "dc:description",
      "dc:format",
      "dc:identifier",
      "dc:language",
      "dc:publisher",
      "dc:relation",
      "dc:rights",
      "dc:source",
      "dc:subject",
      "dc:title",
      "dc:type",
      "dcterms:alternative",
      "dcterms:created",
      "dcterms:extent",
      "dcterms:hasFormat",
      "dcterms:hasPart",
      "dcterms:hasVersion",
      "dcterms:isPartOf",
      "dcterms:isReferencedBy",
      "dcterms:issued",
      "dcterms:medium",
      "dcterms:provenance",
      "dcterms:references",
      "dcterms:spatial",
      "dcterms:tableOfContents",
      "dcterms:temporal",
      "enrichment:agent_label",
      "enrichment:agent_term",
      "enrichment:concept_broader_label",
      "enrichment:concept_broader_term",
      "enrichment:concept_label",
      "enrichment:concept_term",
      "enrichment:period_broader_label",
      "enrichment:period_broader_term",
      "enrichment:period_label",
      "enrichment:period_term",
      "enrichment:place_broader_label",
      "enrichment:place_broader_term",
      "enrichment:place_label",
      "enrichment:place_term",
      "europeana:country",
      "europeana:dataProvider",
      "europeana:isShownAt",
      "europeana:isShownBy",
      "europeana:language",
      "europeana:object",
      "europeana:provider",
      "europeana:rights",
      "europeana:type",
      "europeana:uri",
      "europeana:year",
  };
  return kSchema;
}

namespace {

// Parses one record; throws DataError with a reason on malformed input.
Document parse_document(std::string_view line, const std::unordered_set<std::string>& schema, bool lax,
                        std::size_t& dropped_fields) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("record is not a JSON object");
  Document doc;
  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) throw DataError("missing string \"id\"");
  doc.id = std::string(text::trim(id->get<std::string>()));
  if (doc.id.empty()) throw DataError("empty \"id\"");
  auto lang = j.find("lang");
  if (lang == j.end() || !lang->is_string() || text::trim(lang->get<std::string>()).empty()) {
    throw DataError("missing string \"lang\" for id " + doc.id);
  }
  doc.lang = std::string(text::trim(lang->get<std::string>()));
  auto fields = j.find("fields");
  if (fields == j.end() || !fields->is_object()) throw DataError("missing object \"fields\" for id " + doc.id);
  for (const auto& [name, values] : fields->items()) {
    if (!schema.contains(name)) {
      if (!lax) throw DataError("unknown field \"" + name + "\" in id " + doc.id);
      ++dropped_fields;
      continue;
    }
    if (!values.is_array()) throw DataError("field \"" + name + "\" is not an array in id " + doc.id);
    std::vector<std::string> kept;
    for (const auto& v : values) {
      if (!v.is_string()) throw DataError("non-string value in field \"" + name + "\" of id " + doc.id);
      auto trimmed = text::trim(v.get_ref<const std::string&>());
      if (!trimmed.empty()) kept.emplace_back(trimmed);
    }
    if (!kept.empty()) doc.fields.emplace(name, std::move(kept));
  }
  return doc;
}

}  // namespace

IngestResult ingest_documents(std::istream& in, std::span<const std::string> schema, bool lax) {
  const std::unordered_set<std::string> known(schema.begin(), schema.end());
  std::unordered_set<std::string> seen;
  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    Document doc;
    try {
      doc = parse_document(line, known, lax, result.summary.dropped_fields);
    } catch (const DataError& e) {
      if (!lax) throw DataError(fmt::format("line {}: {}", line_no, e.what()));
      ++result.summary.rejected;
      result.summary.reasons.push_back(fmt::format("line {}: {}", line_no, e.what()));
      continue;
    }
    if (!seen.insert(doc.id).second) {
      throw DataError(fmt::format("line {}: duplicate document id \"{}\"", line_no, doc.id));
    }
    result.documents.push_back(std::move(doc));
    ++result.summary.accepted;
  }
  return result;
}

IngestResult ingest_documents(const std::filesystem::path& path, std::span<const std::string> schema,
                              bool lax) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open documents file: " + path.string());
  return ingest_documents(in, schema, lax);
}

std::vector<Topic> parse_topics(std::istream& in) {
  std::vector<Topic> topics;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(fmt::format("topics line {}: invalid JSON: {}", line_no, e.what()));
    }
    auto str = [&](const char* key, bool required) -> std::optional<std::string> {
      auto it = j.find(key);
      if (it == j.end() || it->is_null()) {
        if (required) throw DataError(fmt::format("topics line {}: missing \"{}\"", line_no, key));
        return std::nullopt;
      }
      if (!it->is_string()) throw DataError(fmt::format("topics line {}: \"{}\" is not a string", line_no, key));
      return it->get<std::string>();
    };
    if (!j.is_object()) throw DataError(fmt::format("topics line {}: not a JSON object", line_no));
    Topic t;
    t.id = std::string(text::trim(*str("id", true)));
    t.lang = std::string(text::trim(*str("lang", true)));
    t.title = std::string(text::trim(*str("title", true)));
    if (auto d = str("description", false)) {
      auto trimmed = text::trim(*d);
      if (!trimmed.empty()) t.description = std::string(trimmed);
    }
    if (t.id.empty()) throw DataError(fmt::format("topics line {}: empty id", line_no));
    if (t.title.empty()) throw DataError(fmt::format("topics line {}: empty title for {}", line_no, t.id));
    if (!seen.insert(t.id).second) throw DataError(fmt::format("topics line {}: duplicate topic id {}", line_no, t.id));
    topics.push_back(std::move(t));
  }
  return topics;
}

std::vector<Topic> load_topics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open topics file: " + path.string());
  return parse_topics(in);
}

int CoverageReport::percent(std::size_t count, std::size_t corpus_size) {
  if (corpus_size == 0) return 0;
  // floor((200 * count + corpus_size) / (2 * corpus_size)) is round-half-up of 100*count/N.
  return static_cast<int>((200 * count + corpus_size) / (2 * corpus_size));
}

CoverageReport coverage_report(std::span<const Document> corpus, std::span<const std::string> schema) {
  if (corpus.empty()) throw DataError("empty corpus");
  CoverageReport report;
  report.corpus_size = corpus.size();
  report.fields.reserve(schema.size());
  for (const auto& name : schema) {
    FieldCoverage fc{name, 0};
    for (const auto& doc : corpus) {
      if (const auto* v = doc.values(name); v != nullptr && !v->empty()) ++fc.count;
    }
    report.fields.push_back(std::move(fc));
  }
  return report;
}

FieldStats summarize_counts(std::vector<std::size_t> counts) {
  if (counts.empty()) throw DataError("empty topic list");
  std::sort(counts.begin(), counts.end());
  FieldStats s;
  std::size_t total = 0;
  for (auto c : counts) total += c;
  s.mean = static_cast<double>(total) / static_cast<double>(counts.size());
  const std::size_t n = counts.size();
  s.median = n % 2 == 1 ? static_cast<double>(counts[n / 2])
                        : (static_cast<double>(counts[n / 2 - 1]) + static_cast<double>(counts[n / 2])) / 2.0;
  s.min = counts.front();
  s.max = counts.back();
  return s;
}

TopicStats topic_stats(std::span<const Topic> topics) {
  if (topics.empty()) throw DataError("empty topic list");
  std::vector<std::size_t> titles;
  std::vector<std::size_t> descriptions;
  for (const auto& t : topics) {
    titles.push_back(text::split_whitespace(t.title).size());
    descriptions.push_back(t.description ? text::split_whitespace(*t.description).size() : 0);
  }
  TopicStats stats;
  stats.topics = topics.size();
  stats.title = summarize_counts(std::move(titles));
  stats.description = summarize_counts(std::move(descriptions));
  return stats;
}

std::string format_coverage(const CoverageReport& report, TableFormat format) {
  std::string out;
  if (format == TableFormat::tsv) {
    out += "field\tcount\tpercent\n";
    for (const auto& f : report.fields) out += fmt::format("{}\t{}\t{}\n", f.field, f.count, report.percent(f));
    return out;
  }
  std::size_t width = 10;
  for (const auto& f : report.fields) width = std::max(width, f.field.size());
  out += fmt::format("{:<{}}  {:>8}  {:>3}\n", "field", width, "count", "%");
  for (const auto& f : report.fields) {
    out += fmt::format("{:<{}}  {:>8}  {:>3}\n", f.field, width, f.count, report.percent(f));
  }
  out += fmt::format("{} documents\n", report.corpus_size);
  return out;
}

namespace {

std::string median_text(double m) { return fmt::format("{}", m); }

}  // namespace

std::string format_topic_stats(const TopicStats& stats, TableFormat format) {
  std::string out;
  const std::pair<const char*, const FieldStats*> rows[] = {{"description", &stats.description},
                                                            {"title", &stats.title}};
  if (format == TableFormat::tsv) {
    out += "field\tmean\tmedian\tmin\tmax\n";
    for (const auto& [name, s] : rows) {
      out += fmt::format("{}\t{:.2f}\t{}\t{}\t{}\n", name, s->mean, median_text(s->median), s->min, s->max);
    }
    return out;
  }
  out += fmt::format("{:<12} {:>6} {:>6} {:>4} {:>4}\n", "field", "mean", "median", "min", "max");
  for (const auto& [name, s] : rows) {
    out += fmt::format("{:<12} {:>6.2f} {:>6} {:>4} {:>4}\n", name, s->mean, median_text(s->median), s->min, s->max);
  }
  out += fmt::format("{} topics\n", stats.topics);
  return out;
}

}  // namespace sparse_expand
