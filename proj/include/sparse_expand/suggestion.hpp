#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sparse_expand {

enum class System { wiki_entity, wiki_sim, wiki_back, str, combo };

// Merge order used by COMBO.
inline constexpr std::array<System, 4> kSourceSystems = {System::wiki_entity, System::wiki_sim, System::wiki_back,
                                                         System::str};

std::string_view system_name(System s);  // "WIKI_ENTITY", ...
System parse_system(std::string_view name);

struct ConceptSuggestion {
  std::string text;
  double score = 0;
  std::size_t rank = 0;  // 1-based
  System source = System::str;

  bool operator==(const ConceptSuggestion&) const = default;
};

struct SuggestionSet {
  std::string topic_id;
  System system = System::str;
  std::vector<ConceptSuggestion> items;

  // Throws DataError unless ranks run 1..k, scores are non-increasing and
  // texts are distinct.
  void validate() const;

  bool operator==(const SuggestionSet&) const = default;
};

// Assigns rank = position + 1 and the given source label.
SuggestionSet make_suggestion_set(std::string topic_id, System system, std::vector<ConceptSuggestion> items);

// Tab-separated `topic_id rank concept_text score system`, sorted by topic
// then rank. Tabs and newlines inside concept texts are written as spaces.
std::string format_suggestions(std::vector<SuggestionSet> sets);
std::vector<SuggestionSet> parse_suggestions(std::string_view content);
std::vector<SuggestionSet> load_suggestions(const std::filesystem::path& path);

}  // namespace sparse_expand
