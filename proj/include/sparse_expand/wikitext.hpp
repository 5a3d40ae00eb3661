#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sparse_expand::wikitext {

struct StripResult {
  std::string text;
  // Set when an unterminated comment, template, bracket link or table was
  // cut off at the end of the text.
  bool unbalanced = false;
};

// Removes, in order: <!-- comments -->, {{templates}} (nested), file, image
// and category links (nested brackets), and {| tables |} (nested). Plain
// [[links]] are kept. Passes repeat until the text stops changing, so the
// result is a fixed point.
StripResult strip_markup(std::string_view wikitext);

// Target of a link body "target|label": fragment dropped, whitespace trimmed
// and collapsed. Returns nullopt for empty targets and for namespaced or
// interlanguage targets (File:, Category:, de:, ...).
std::optional<std::string> normalize_link_target(std::string_view body);

// Targets of [[...]] links in appearance order, first occurrence kept.
std::vector<std::string> extract_links(std::string_view wikitext);

struct LeadExtract {
  std::string lead;  // cleaned text above the first "==" heading line
  std::vector<std::string> links;
  bool used_full_article = false;
  bool unbalanced = false;
};

inline constexpr std::size_t kDefaultMinLinks = 3;

// Links of the lead section; when fewer than min_links are found the links of
// the whole cleaned article are used instead.
LeadExtract extract_lead(std::string_view wikitext, std::size_t min_links = kDefaultMinLinks);

}  // namespace sparse_expand::wikitext
