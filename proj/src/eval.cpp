#include "sparse_expand/eval.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <set>

#include "sparse_expand/error.hpp"
#include "sparse_expand/io.hpp"
#include "sparse_expand/log.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

namespace {

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t line_no = 0;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    fn(line_no, line);
  }
}

std::size_t parse_count(std::string_view s, std::size_t line_no, const char* what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw DataError(where(line_no) + "bad " + what + " '" + std::string(s) + "'");
  return v;
}

int parse_grade(std::string_view s, std::size_t line_no) {
  if (s != "0" && s != "1" && s != "2") throw DataError(where(line_no) + "grade must be 0, 1 or 2, got '" + std::string(s) + "'");
  return s[0] - '0';
}

}  // namespace

void validate_run(const Run& run) {
  for (const auto& [topic, recs] : run) {
    std::set<std::string_view> docs;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& r = recs[i];
      if (r.topic_id != topic) throw DataError("run record filed under the wrong topic " + topic);
      if (r.rank != i + 1) throw DataError("run topic " + topic + ": ranks are not contiguous from 1");
      if (i > 0 && r.score > recs[i - 1].score) throw DataError("run topic " + topic + ": scores increase with rank");
      if (!docs.insert(r.doc_id).second) throw DataError("run topic " + topic + ": duplicate document " + r.doc_id);
    }
  }
}

std::vector<RunRecord> make_run_records(const std::string& topic_id, std::span<const std::pair<std::string, double>> hits,
                                        const std::string& run_tag) {
  std::vector<RunRecord> out;
  out.reserve(hits.size());
  for (const auto& [doc, score] : hits) out.push_back({topic_id, doc, out.size() + 1, score, run_tag});
  return out;
}

std::string format_run(const Run& run) {
  std::string out;
  for (const auto& [topic, recs] : run) {
    for (const auto& r : recs) {
      out += fmt::format("{} Q0 {} {} {} {}\n", r.topic_id, r.doc_id, r.rank, io::format_double(r.score), r.run_tag);
    }
  }
  return out;
}

Run parse_run(std::string_view content) {
  Run run;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    auto cols = text::split_whitespace(line);
    if (cols.size() != 6) throw DataError(where(line_no) + "expected 6 run columns, got " + std::to_string(cols.size()));
    RunRecord r;
    r.topic_id = cols[0];
    r.doc_id = cols[2];
    r.rank = parse_count(cols[3], line_no, "rank");
    try {
      r.score = io::parse_double(cols[4]);
    } catch (const std::exception&) {
      throw DataError(where(line_no) + "bad score '" + cols[4] + "'");
    }
    r.run_tag = cols[5];
    run[r.topic_id].push_back(std::move(r));
  });
  for (auto& [_, recs] : run) {
    std::stable_sort(recs.begin(), recs.end(), [](const RunRecord& a, const RunRecord& b) { return a.rank < b.rank; });
  }
  validate_run(run);
  return run;
}

Run load_run(const std::filesystem::path& path) { return parse_run(io::read_file(path)); }

void Qrels::set(const std::string& topic, const std::string& doc, int grade) {
  if (grade < 0 || grade > 2) throw DataError("grade must be 0, 1 or 2");
  grades_[topic][doc] = grade;
}

int Qrels::grade(std::string_view topic, std::string_view doc) const {
  auto t = grades_.find(topic);
  if (t == grades_.end()) return 0;
  auto d = t->second.find(doc);
  return d == t->second.end() ? 0 : d->second;
}

bool Qrels::has_topic(std::string_view topic) const { return grades_.find(topic) != grades_.end(); }

std::vector<std::string> Qrels::topics() const {
  std::vector<std::string> out;
  for (const auto& [t, _] : grades_) out.push_back(t);
  return out;
}

std::size_t Qrels::relevant_count(std::string_view topic, int threshold) const {
  auto t = grades_.find(topic);
  if (t == grades_.end()) return 0;
  std::size_t n = 0;
  for (const auto& [_, g] : t->second) n += g >= threshold;
  return n;
}

Qrels parse_qrels(std::string_view content) {
  Qrels q;
  std::set<std::pair<std::string, std::string>> seen;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    auto cols = text::split_whitespace(line);
    if (cols.size() != 4) throw DataError(where(line_no) + "expected 4 qrels columns, got " + std::to_string(cols.size()));
    if (!seen.emplace(cols[0], cols[2]).second) throw DataError(where(line_no) + "duplicate judgment for " + cols[0] + " " + cols[2]);
    q.set(cols[0], cols[2], parse_grade(cols[3], line_no));
  });
  return q;
}

Qrels load_qrels(const std::filesystem::path& path) { return parse_qrels(io::read_file(path)); }

double average_precision(std::span<const std::string> ranked, const Qrels& qrels, std::string_view topic, int threshold) {
  const std::size_t R = qrels.relevant_count(topic, threshold);
  if (R == 0) return 0.0;
  double sum = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (qrels.grade(topic, ranked[i]) >= threshold) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(R);
}

double r_precision(std::span<const std::string> ranked, const Qrels& qrels, std::string_view topic, int threshold) {
  const std::size_t R = qrels.relevant_count(topic, threshold);
  if (R == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.size() && i < R; ++i) hits += qrels.grade(topic, ranked[i]) >= threshold;
  return static_cast<double>(hits) / static_cast<double>(R);
}

MetricReport evaluate_run(const Run& run, const Qrels& qrels, int threshold, std::size_t depth) {
  for (const auto& [topic, _] : run) {
    if (!qrels.has_topic(topic)) log::warn("run topic " + topic + " has no judgments, excluded");
  }
  MetricReport report;
  for (const auto& topic : qrels.topics()) {
    const std::size_t R = qrels.relevant_count(topic, threshold);
    if (R == 0) {
      log::info("topic " + topic + " has no relevant documents, excluded");
      continue;
    }
    std::vector<std::string> ranked;
    if (auto it = run.find(topic); it != run.end()) {
      for (const auto& r : it->second) {
        if (ranked.size() >= depth) break;
        ranked.push_back(r.doc_id);
      }
    }
    TopicMetrics m;
    m.topic_id = topic;
    m.relevant = R;
    m.retrieved = ranked.size();
    m.ap = average_precision(ranked, qrels, topic, threshold);
    m.r_precision = r_precision(ranked, qrels, topic, threshold);
    report.topics.push_back(std::move(m));
  }
  if (!report.topics.empty()) {
    double ap = 0, rp = 0;
    for (const auto& m : report.topics) {
      ap += m.ap;
      rp += m.r_precision;
    }
    report.map = ap / static_cast<double>(report.topics.size());
    report.mean_r_precision = rp / static_cast<double>(report.topics.size());
  }
  return report;
}

SePrecision se_precision(std::span<const int> grades) {
  if (grades.empty()) return {};
  std::size_t weak = 0, strong = 0;
  for (int g : grades) {
    if (g < 0 || g > 2) throw DataError("grade must be 0, 1 or 2");
    weak += g >= 1;
    strong += g == 2;
  }
  const auto n = static_cast<double>(grades.size());
  return {static_cast<double>(weak) / n, static_cast<double>(strong) / n};
}

SeJudgments parse_se_judgments(std::string_view content) {
  SeJudgments j;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    auto cols = text::split(line, '\t');
    if (cols.size() != 3) throw DataError(where(line_no) + "expected topic_id<TAB>rank<TAB>grade");
    std::string topic(text::trim(cols[0]));
    auto rank = parse_count(text::trim(cols[1]), line_no, "rank");
    if (rank == 0) throw DataError(where(line_no) + "rank must be at least 1");
    if (!j[topic].emplace(rank, parse_grade(text::trim(cols[2]), line_no)).second) {
      throw DataError(where(line_no) + "duplicate judgment for " + topic + " rank " + std::to_string(rank));
    }
  });
  return j;
}

SeJudgments load_se_judgments(const std::filesystem::path& path) { return parse_se_judgments(io::read_file(path)); }

std::vector<SeReport> evaluate_se(std::span<const SuggestionSet> sets, const SeJudgments& judgments) {
  std::map<System, std::map<std::string, const SuggestionSet*>> by_system;
  for (const auto& s : sets) {
    if (!by_system[s.system].emplace(s.topic_id, &s).second) {
      throw DataError("two " + std::string(system_name(s.system)) + " suggestion sets for topic " + s.topic_id);
    }
  }
  std::vector<SeReport> reports;
  for (const auto& [system, topics] : by_system) {
    std::set<std::string> ids;
    for (const auto& [t, _] : topics) ids.insert(t);
    for (const auto& [t, _] : judgments) ids.insert(t);

    SeReport rep;
    rep.system = system;
    for (const auto& id : ids) {
      SeTopic st;
      st.topic_id = id;
      std::vector<int> grades;
      auto set_it = topics.find(id);
      auto judged = judgments.find(id);
      if (set_it != topics.end()) {
        for (const auto& item : set_it->second->items) {
          int g = 0;
          if (judged != judgments.end()) {
            if (auto g_it = judged->second.find(item.rank); g_it != judged->second.end()) {
              g = g_it->second;
            } else {
              log::warn(fmt::format("{} topic {} rank {} unjudged, counted as 0", system_name(system), id, item.rank));
            }
          } else {
            log::warn(fmt::format("{} topic {} rank {} unjudged, counted as 0", system_name(system), id, item.rank));
          }
          grades.push_back(g);
        }
      }
      if (grades.empty()) log::warn(fmt::format("{} topic {} has no suggestions, scored 0", system_name(system), id));
      st.suggestions = grades.size();
      st.precision = se_precision(grades);
      rep.mean.weak += st.precision.weak;
      rep.mean.strong += st.precision.strong;
      rep.topics.push_back(std::move(st));
    }
    if (!rep.topics.empty()) {
      rep.mean.weak /= static_cast<double>(rep.topics.size());
      rep.mean.strong /= static_cast<double>(rep.topics.size());
    }
    reports.push_back(std::move(rep));
  }
  std::stable_sort(reports.begin(), reports.end(), [](const SeReport& a, const SeReport& b) {
    return static_cast<int>(a.system) < static_cast<int>(b.system);
  });
  return reports;
}

std::string format_metric_report(const MetricReport& report, TableFormat format) {
  std::string out;
  if (format == TableFormat::tsv) {
    out += "topic\tap\tr_precision\trelevant\tretrieved\n";
    for (const auto& m : report.topics) {
      out += fmt::format("{}\t{:.4f}\t{:.4f}\t{}\t{}\n", m.topic_id, m.ap, m.r_precision, m.relevant, m.retrieved);
    }
    out += fmt::format("all\t{:.4f}\t{:.4f}\t\t\n", report.map, report.mean_r_precision);
    return out;
  }
  std::size_t width = 5;
  for (const auto& m : report.topics) width = std::max(width, m.topic_id.size());
  out += fmt::format("{:<{}}  {:>6}  {:>6}  {:>5}  {:>5}\n", "topic", width, "AP", "R-P", "rel", "ret");
  for (const auto& m : report.topics) {
    out += fmt::format("{:<{}}  {:>6.4f}  {:>6.4f}  {:>5}  {:>5}\n", m.topic_id, width, m.ap, m.r_precision, m.relevant,
                       m.retrieved);
  }
  out += fmt::format("{:<{}}  {:>6.4f}  {:>6.4f}\n", "MAP", width, report.map, report.mean_r_precision);
  return out;
}

std::string format_se_reports(std::span<const SeReport> reports, TableFormat format) {
  std::string out;
  if (format == TableFormat::tsv) {
    out += "system\ttopic\tsuggestions\tweak\tstrong\n";
    for (const auto& r : reports) {
      for (const auto& t : r.topics) {
        out += fmt::format("{}\t{}\t{}\t{:.4f}\t{:.4f}\n", system_name(r.system), t.topic_id, t.suggestions,
                           t.precision.weak, t.precision.strong);
      }
      out += fmt::format("{}\tall\t\t{:.4f}\t{:.4f}\n", system_name(r.system), r.mean.weak, r.mean.strong);
    }
    return out;
  }
  out += fmt::format("{:<12} {:>6} {:>7} {:>7}\n", "system", "topics", "weak", "strong");
  for (const auto& r : reports) {
    out += fmt::format("{:<12} {:>6} {:>7.4f} {:>7.4f}\n", system_name(r.system), r.topics.size(), r.mean.weak,
                       r.mean.strong);
  }
  return out;
}

}  // namespace sparse_expand
