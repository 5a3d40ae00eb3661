#include "sparse_expand/wikitext.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "sparse_expand/text.hpp"

namespace sparse_expand::wikitext {

namespace {

bool starts_with_at(std::string_view s, std::size_t pos, std::string_view prefix) {
  return s.substr(pos, prefix.size()) == prefix;
}

bool iequals_prefix(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

std::string remove_comments(std::string_view s, bool& unbalanced) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto open = s.find("<!--", i);
    if (open == std::string_view::npos) {
      out.append(s.substr(i));
      break;
    }
    out.append(s.substr(i, open - i));
    auto close = s.find("-->", open + 4);
    if (close == std::string_view::npos) {
      unbalanced = true;
      break;
    }
    i = close + 3;
  }
  return out;
}

// Removes regions opened by `is_open` at a position and closed by `close`,
// counting nested `nest_open` / `close` pairs inside.
template <typename IsOpen>
std::string remove_nested(std::string_view s, IsOpen is_open, std::string_view nest_open, std::string_view close,
                          bool& unbalanced) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t open_len = is_open(s, i);
    if (open_len == 0) {
      out.push_back(s[i]);
      ++i;
      continue;
    }
    std::size_t depth = 1;
    std::size_t j = i + open_len;
    while (j < s.size() && depth > 0) {
      if (starts_with_at(s, j, nest_open)) {
        ++depth;
        j += nest_open.size();
      } else if (starts_with_at(s, j, close)) {
        --depth;
        j += close.size();
      } else {
        ++j;
      }
    }
    if (depth > 0) {
      unbalanced = true;
      return out;
    }
    i = j;
  }
  return out;
}

constexpr std::array<std::string_view, 7> kMediaPrefixes = {"File", "Image", "Category", "Datei", "Bild",
                                                           "Kategorie", "Media"};

// Length of a "[[File:" style opener at pos (optional spaces before the
// namespace), or 0.
std::size_t media_link_open(std::string_view s, std::size_t pos) {
  if (!starts_with_at(s, pos, "[[")) return 0;
  std::size_t j = pos + 2;
  while (j < s.size() && s[j] == ' ') ++j;
  for (auto prefix : kMediaPrefixes) {
    auto rest = s.substr(j);
    if (iequals_prefix(rest, prefix)) {
      std::size_t k = j + prefix.size();
      while (k < s.size() && s[k] == ' ') ++k;
      if (k < s.size() && s[k] == ':') return k + 1 - pos;
    }
  }
  return 0;
}

std::string strip_once(std::string_view input, bool& unbalanced) {
  std::string s = remove_comments(input, unbalanced);
  s = remove_nested(
      s, [](std::string_view t, std::size_t p) -> std::size_t { return starts_with_at(t, p, "{{") ? 2 : 0; }, "{{",
      "}}", unbalanced);
  s = remove_nested(s, media_link_open, "[[", "]]", unbalanced);
  s = remove_nested(
      s, [](std::string_view t, std::size_t p) -> std::size_t { return starts_with_at(t, p, "{|") ? 2 : 0; }, "{|",
      "|}", unbalanced);
  return s;
}

bool is_lang_code(std::string_view p) {
  // xx, xxx, or xx-yyy style interlanguage prefixes, lowercase ASCII.
  auto dash = p.find('-');
  auto head = p.substr(0, dash);
  if (head.size() < 2 || head.size() > 3) return false;
  for (char c : p) {
    if (!(std::islower(static_cast<unsigned char>(c)) || c == '-')) return false;
  }
  return true;
}

constexpr std::array<std::string_view, 24> kNamespaces = {
    "file",   "image",    "category", "media",    "special",    "wikipedia", "wp",        "help",
    "portal", "template", "user",     "talk",     "mediawiki",  "module",    "draft",     "wiktionary",
    "wikt",   "datei",    "bild",     "kategorie", "vorlage",   "hilfe",     "benutzer",  "commons",
};

}  // namespace

StripResult strip_markup(std::string_view wikitext) {
  StripResult result;
  std::string current(wikitext);
  while (true) {
    auto next = strip_once(current, result.unbalanced);
    if (next == current) break;
    current = std::move(next);
  }
  result.text = std::move(current);
  return result;
}

std::optional<std::string> normalize_link_target(std::string_view body) {
  auto target = body.substr(0, body.find('|'));
  target = target.substr(0, target.find('#'));
  auto t = text::collapse_whitespace(target);
  if (t.empty()) return std::nullopt;
  if (t.front() == ':') return std::nullopt;  // forced namespace link
  if (auto colon = t.find(':'); colon != std::string::npos) {
    auto prefix = text::trim(std::string_view(t).substr(0, colon));
    const auto lowered = text::lowercase(prefix);
    if (std::find(kNamespaces.begin(), kNamespaces.end(), lowered) != kNamespaces.end()) return std::nullopt;
    if (is_lang_code(prefix)) return std::nullopt;
  }
  return t;
}

std::vector<std::string> extract_links(std::string_view wikitext) {
  std::vector<std::string> links;
  std::set<std::string> seen;
  std::size_t i = 0;
  while (true) {
    auto open = wikitext.find("[[", i);
    if (open == std::string_view::npos) break;
    auto close = wikitext.find("]]", open + 2);
    if (close == std::string_view::npos) break;
    // Innermost link when brackets nest: restart at a later opener.
    auto inner = wikitext.find("[[", open + 2);
    if (inner != std::string_view::npos && inner < close) {
      i = inner;
      continue;
    }
    auto body = wikitext.substr(open + 2, close - open - 2);
    if (auto target = normalize_link_target(body); target && seen.insert(*target).second) {
      links.push_back(std::move(*target));
    }
    i = close + 2;
  }
  return links;
}

LeadExtract extract_lead(std::string_view wikitext, std::size_t min_links) {
  auto stripped = strip_markup(wikitext);
  LeadExtract out;
  out.unbalanced = stripped.unbalanced;
  const std::string& clean = stripped.text;

  std::size_t lead_end = clean.size();
  std::size_t line_start = 0;
  while (line_start < clean.size()) {
    if (starts_with_at(clean, line_start, "==")) {
      lead_end = line_start;
      break;
    }
    auto nl = clean.find('\n', line_start);
    if (nl == std::string::npos) break;
    line_start = nl + 1;
  }
  out.lead = clean.substr(0, lead_end);
  out.links = extract_links(out.lead);
  if (out.links.size() < min_links) {
    out.links = extract_links(clean);
    out.used_full_article = true;
  }
  return out;
}

}  // namespace sparse_expand::wikitext
