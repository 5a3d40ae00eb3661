#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparse_expand/corpus.hpp"
#include "sparse_expand/suggestion.hpp"

namespace sparse_expand {

struct RunRecord {
  std::string topic_id;
  std::string doc_id;
  std::size_t rank = 0;  // 1-based
  double score = 0;
  std::string run_tag;

  bool operator==(const RunRecord&) const = default;
};

// Records grouped by topic, each group in rank order.
using Run = std::map<std::string, std::vector<RunRecord>>;

// Throws DataError on rank gaps, increasing scores or repeated (topic, doc).
void validate_run(const Run& run);

// Ranked search hits of one topic as records with ranks 1..n.
std::vector<RunRecord> make_run_records(const std::string& topic_id, std::span<const std::pair<std::string, double>> hits,
                                        const std::string& run_tag);

// TREC format `topic Q0 doc rank score tag`, topics in id order.
std::string format_run(const Run& run);
Run parse_run(std::string_view content);
Run load_run(const std::filesystem::path& path);

class Qrels {
 public:
  void set(const std::string& topic, const std::string& doc, int grade);
  int grade(std::string_view topic, std::string_view doc) const;  // 0 when unjudged
  bool has_topic(std::string_view topic) const;
  std::vector<std::string> topics() const;
  std::size_t relevant_count(std::string_view topic, int threshold) const;

 private:
  std::map<std::string, std::map<std::string, int, std::less<>>, std::less<>> grades_;
};

// TREC format `topic 0 doc grade`, grades in {0, 1, 2}.
Qrels parse_qrels(std::string_view content);
Qrels load_qrels(const std::filesystem::path& path);

inline constexpr int kRelevanceThreshold = 1;
inline constexpr std::size_t kRunDepth = 1000;

// Ranked doc ids of one topic.
double average_precision(std::span<const std::string> ranked, const Qrels& qrels, std::string_view topic,
                         int threshold = kRelevanceThreshold);
double r_precision(std::span<const std::string> ranked, const Qrels& qrels, std::string_view topic,
                   int threshold = kRelevanceThreshold);

struct TopicMetrics {
  std::string topic_id;
  double ap = 0;
  double r_precision = 0;
  std::size_t relevant = 0;
  std::size_t retrieved = 0;
};

struct MetricReport {
  std::vector<TopicMetrics> topics;  // topic id order
  double map = 0;
  double mean_r_precision = 0;
};

// Topics are those of the qrels with at least one relevant document; a topic
// missing from the run scores 0. Run topics absent from the qrels are skipped
// with a warning.
MetricReport evaluate_run(const Run& run, const Qrels& qrels, int threshold = kRelevanceThreshold,
                          std::size_t depth = kRunDepth);

struct SePrecision {
  double weak = 0;
  double strong = 0;
};

// grades[i] is the judgment of the suggestion at rank i+1.
SePrecision se_precision(std::span<const int> grades);

// Tab-separated `topic_id rank grade`.
using SeJudgments = std::map<std::string, std::map<std::size_t, int>>;
SeJudgments parse_se_judgments(std::string_view content);
SeJudgments load_se_judgments(const std::filesystem::path& path);

struct SeTopic {
  std::string topic_id;
  std::size_t suggestions = 0;
  SePrecision precision;
};

struct SeReport {
  System system = System::str;
  std::vector<SeTopic> topics;
  SePrecision mean;
};

// One report per system present in `sets`. Topics are the union of the
// judged topics and the suggested topics.
std::vector<SeReport> evaluate_se(std::span<const SuggestionSet> sets, const SeJudgments& judgments);

std::string format_metric_report(const MetricReport& report, TableFormat format);
std::string format_se_reports(std::span<const SeReport> reports, TableFormat format);

}  // namespace sparse_expand
