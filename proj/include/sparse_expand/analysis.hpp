#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sparse_expand {

enum class Stage { tokenize, stopwords, lowercase, en_possessive, porter_stem, de_normalize, de_light_stem };

std::string_view stage_name(Stage s);
Stage parse_stage(std::string_view name);

struct Token {
  std::string text;
  std::uint32_t position = 0;  // ordinal among tokens surviving stopword removal

  bool operator==(const Token&) const = default;
};

using StopwordSet = std::set<std::string, std::less<>>;

// Built-in lists: about 120 English and 130 German function words.
const StopwordSet& builtin_stopwords(std::string_view lang);

// One word per line, '#' starts a comment. Words are lowercased.
StopwordSet load_stopwords(const std::filesystem::path& path);
StopwordSet parse_stopwords(std::string_view content);

// Splits on runs of non-word characters. An apostrophe between two word
// characters stays inside the token so that possessives survive.
std::vector<std::string> tokenize(std::string_view input);

std::string strip_english_possessive(std::string_view term);

// Porter (1980), following the reference C implementation.
std::string porter_stem(std::string_view term);

// ä→a, ö→o, ü→u, ß→ss. Everything else unchanged.
std::string german_normalize(std::string_view term);

// Strips the first matching suffix of {ern, em, en, er, es, e, s} when at
// least four characters remain.
std::string german_light_stem(std::string_view term);

// Immutable analyzer profile for one language.
//   en: tokenize, en_possessive, lowercase, stopwords, porter_stem
//   de: tokenize, lowercase, stopwords, de_normalize, de_light_stem
class AnalyzerChain {
 public:
  static AnalyzerChain for_language(std::string_view lang);
  static AnalyzerChain for_language(std::string_view lang, StopwordSet stopwords);
  // Reassembles a chain from its recorded parts (used by index snapshots).
  static AnalyzerChain from_parts(std::string lang, std::vector<Stage> stages, StopwordSet stopwords);

  const std::string& lang() const { return lang_; }
  const std::vector<Stage>& stages() const { return stages_; }
  const StopwordSet& stopwords() const { return stopwords_; }

  std::vector<Token> analyze(std::string_view input) const;
  std::vector<std::string> terms(std::string_view input) const;

  // Runs every stage after tokenize on one already-split token; returns an
  // empty string when the token is dropped.
  std::string analyze_token(std::string_view token) const;

  // True when the lowercased form of `word` is on the stopword list.
  bool is_stopword(std::string_view word) const;

  bool operator==(const AnalyzerChain&) const = default;

 private:
  AnalyzerChain(std::string lang, std::vector<Stage> stages, StopwordSet stopwords);

  std::string lang_;
  std::vector<Stage> stages_;
  StopwordSet stopwords_;
};

using AnalyzerSet = std::map<std::string, AnalyzerChain, std::less<>>;

// en and de chains with the built-in stopword lists.
AnalyzerSet default_analyzers();

}  // namespace sparse_expand
