#include "sparse_expand/suggestion.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "sparse_expand/error.hpp"
#include "sparse_expand/io.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

namespace {

constexpr std::array<std::pair<System, std::string_view>, 5> kNames = {{
    {System::wiki_entity, "WIKI_ENTITY"},
    {System::wiki_sim, "WIKI_SIM"},
    {System::wiki_back, "WIKI_BACK"},
    {System::str, "STR"},
    {System::combo, "COMBO"},
}};

std::string sanitize(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

std::string_view system_name(System s) {
  for (const auto& [sys, name] : kNames) {
    if (sys == s) return name;
  }
  return "UNKNOWN";
}

System parse_system(std::string_view name) {
  for (const auto& [sys, n] : kNames) {
    if (n == name) return sys;
  }
  throw DataError("unknown system label: " + std::string(name));
}

void SuggestionSet::validate() const {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& s = items[i];
    if (s.rank != i + 1) throw DataError("suggestions for " + topic_id + " do not have contiguous ranks");
    if (i > 0 && s.score > items[i - 1].score) {
      throw DataError("suggestion scores for " + topic_id + " increase with rank");
    }
    if (!seen.insert(s.text).second) throw DataError("duplicate suggestion '" + s.text + "' for " + topic_id);
  }
}

SuggestionSet make_suggestion_set(std::string topic_id, System system, std::vector<ConceptSuggestion> items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    items[i].rank = i + 1;
    items[i].source = system;
  }
  return SuggestionSet{std::move(topic_id), system, std::move(items)};
}

std::string format_suggestions(std::vector<SuggestionSet> sets) {
  std::stable_sort(sets.begin(), sets.end(), [](const SuggestionSet& a, const SuggestionSet& b) {
    return a.topic_id < b.topic_id;
  });
  std::string out;
  for (const auto& set : sets) {
    for (const auto& s : set.items) {
      out += set.topic_id;
      out += '\t';
      out += std::to_string(s.rank);
      out += '\t';
      out += sanitize(s.text);
      out += '\t';
      out += io::format_double(s.score);
      out += '\t';
      out += system_name(s.source);
      out += '\n';
    }
  }
  return out;
}

std::vector<SuggestionSet> parse_suggestions(std::string_view content) {
  // Keyed by (topic, system) in first-appearance order.
  std::vector<SuggestionSet> sets;
  std::map<std::pair<std::string, System>, std::size_t> slot;
  std::size_t line_no = 0;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 5) {
      throw DataError("suggestion line " + std::to_string(line_no) + ": expected 5 tab-separated columns");
    }
    ConceptSuggestion s;
    std::string topic(cols[0]);
    auto rank_sv = cols[1];
    auto res = std::from_chars(rank_sv.data(), rank_sv.data() + rank_sv.size(), s.rank);
    if (res.ec != std::errc{} || res.ptr != rank_sv.data() + rank_sv.size() || s.rank == 0) {
      throw DataError("suggestion line " + std::to_string(line_no) + ": bad rank");
    }
    s.text = std::string(cols[2]);
    s.score = io::parse_double(cols[3]);
    s.source = parse_system(cols[4]);
    auto key = std::make_pair(topic, s.source);
    auto it = slot.find(key);
    if (it == slot.end()) {
      it = slot.emplace(key, sets.size()).first;
      sets.push_back(SuggestionSet{topic, s.source, {}});
    }
    sets[it->second].items.push_back(std::move(s));
  }
  for (auto& set : sets) {
    std::stable_sort(set.items.begin(), set.items.end(),
                     [](const ConceptSuggestion& a, const ConceptSuggestion& b) { return a.rank < b.rank; });
    set.validate();
  }
  return sets;
}

std::vector<SuggestionSet> load_suggestions(const std::filesystem::path& path) {
  return parse_suggestions(io::read_file(path));
}

}  // namespace sparse_expand
