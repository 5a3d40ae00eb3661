#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sparse_expand {

// A multi-field metadata record. Field values are trimmed and non-empty;
// a field with no surviving values is absent from the map.
struct Document {
  std::string id;
  std::string lang;
  std::map<std::string, std::vector<std::string>> fields;

  const std::vector<std::string>* values(const std::string& field) const;
  bool operator==(const Document&) const = default;
};

struct Topic {
  std::string id;
  std::string title;
  std::optional<std::string> description;
  std::string lang;

  bool operator==(const Topic&) const = default;
};

// The 55 Dublin Core / dcterms / enrichment / europeana field names of the
// Europeana coverage table, in table order.
const std::vector<std::string>& default_schema();

struct IngestSummary {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t dropped_fields = 0;  // unknown fields dropped in lax mode
  std::vector<std::string> reasons;  // one entry per rejected line
};

struct IngestResult {
  std::vector<Document> documents;
  IngestSummary summary;
};

// Reads line-delimited JSON records {"id", "lang", "fields": {name: [values]}}.
// Strict mode aborts with DataError on the first malformed line or unknown
// field; lax mode skips malformed lines and drops unknown fields, counting
// both. A duplicate id aborts in either mode.
IngestResult ingest_documents(std::istream& in, std::span<const std::string> schema, bool lax);
IngestResult ingest_documents(const std::filesystem::path& path, std::span<const std::string> schema,
                              bool lax);

// Topics are line-delimited JSON {"id", "lang", "title", "description"?}.
std::vector<Topic> parse_topics(std::istream& in);
std::vector<Topic> load_topics(const std::filesystem::path& path);

struct FieldCoverage {
  std::string field;
  std::size_t count = 0;
};

struct CoverageReport {
  std::size_t corpus_size = 0;
  std::vector<FieldCoverage> fields;  // schema order

  // round(100 * count / corpus_size), halves rounded up.
  static int percent(std::size_t count, std::size_t corpus_size);
  int percent(const FieldCoverage& f) const { return percent(f.count, corpus_size); }
};

CoverageReport coverage_report(std::span<const Document> corpus, std::span<const std::string> schema);

struct FieldStats {
  double mean = 0;
  double median = 0;
  std::size_t min = 0;
  std::size_t max = 0;
};

struct TopicStats {
  std::size_t topics = 0;
  FieldStats title;
  FieldStats description;
};

// Whitespace-token counts per topic field; an absent description counts 0.
TopicStats topic_stats(std::span<const Topic> topics);
FieldStats summarize_counts(std::vector<std::size_t> counts);

enum class TableFormat { text, tsv };
std::string format_coverage(const CoverageReport& report, TableFormat format);
std::string format_topic_stats(const TopicStats& stats, TableFormat format);

}  // namespace sparse_expand
