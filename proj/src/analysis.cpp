#include "sparse_expand/analysis.hpp"

#include <array>
#include <fstream>

#include "sparse_expand/error.hpp"
#include "sparse_expand/io.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

namespace {

constexpr std::array<std::pair<Stage, std::string_view>, 7> kStageNames = {{
    {Stage::tokenize, "tokenize"},
    {Stage::stopwords, "stopwords"},
    {Stage::lowercase, "lowercase"},
    {Stage::en_possessive, "en_possessive"},
    {Stage::porter_stem, "porter_stem"},
    {Stage::de_normalize, "de_normalize"},
    {Stage::de_light_stem, "de_light_stem"},
}};

const StopwordSet kEnglishStopwords = {
    "a",        "about",   "above",   "after",   "again",      "against", "all",    "am",     "an",
    "and",      "any",     "are",     "as",      "at",         "be",      "because", "been",  "before",
    "being",    "below",   "between", "both",    "but",        "by",      "can",    "could",  "did",
    "do",       "does",    "doing",   "down",    "during",     "each",    "few",    "for",    "from",
    "further",  "had",     "has",     "have",    "having",     "he",      "her",    "here",   "hers",
    "herself",  "him",     "himself", "his",     "how",        "i",       "if",     "in",     "into",
    "is",       "it",      "its",     "itself",  "just",       "me",      "more",   "most",   "my",
    "myself",   "no",      "nor",     "not",     "now",        "of",      "off",    "on",     "once",
    "only",     "or",      "other",   "our",     "ours",       "ourselves", "out",  "over",   "own",
    "same",     "she",     "should",  "so",      "some",       "such",    "than",   "that",   "the",
    "their",    "theirs",  "them",    "themselves", "then",    "there",   "these",  "they",   "this",
    "those",    "through", "to",      "too",     "under",      "until",   "up",     "very",   "was",
    "we",       "were",    "what",    "when",    "where",      "which",   "while",  "who",    "whom",
    "why",      "will",    "with",    "would",   "you",        "your",    "yours",  "yourself",
    "yourselves",
};

const StopwordSet kGermanStopwords = {
    "aber",    "alle",    "allem",   "allen",   "aller",  "alles",  "als",     "also",    "am",
    "an",      "ander",   "andere",  "anderem", "anderen", "anderer", "anderes", "auch",  "auf",
    "aus",     "bei",     "bin",     "bis",     "bist",   "da",     "damit",   "dann",    "das",
    "dass",    "daß",     "dein",    "deine",   "dem",    "den",    "der",     "des",     "dich",
    "die",     "dies",    "diese",   "diesem",  "diesen", "dieser", "dieses",  "dir",     "doch",
    "dort",    "du",      "durch",   "ein",     "eine",   "einem",  "einen",   "einer",   "eines",
    "er",      "es",      "etwas",   "euch",    "euer",   "für",    "gegen",   "gewesen", "hab",
    "habe",    "haben",   "hat",     "hatte",   "hin",    "hinter", "ich",     "ihm",     "ihn",
    "ihnen",   "ihr",     "ihre",    "im",      "in",     "indem",  "ins",     "ist",     "jede",
    "jedem",   "jeden",   "jeder",   "jedes",   "jene",   "kann",   "kein",    "keine",   "mich",
    "mir",     "mit",     "muss",    "nach",    "nicht",  "nichts", "noch",    "nun",     "nur",
    "ob",      "oder",    "ohne",    "sehr",    "sein",   "seine",  "sich",    "sie",     "sind",
    "so",      "solche",  "soll",    "sondern", "um",     "und",    "uns",     "unser",   "unter",
    "viel",    "vom",     "von",     "vor",     "war",    "waren",  "warst",   "was",     "weil",
    "weiter",  "welche",  "wenn",    "wer",     "werde",  "werden", "wie",     "wieder",  "will",
    "wir",     "wird",    "wo",      "wollen",  "zu",     "zum",    "zur",     "zwar",    "zwischen",
    "über",
};

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

}  // namespace

std::string_view stage_name(Stage s) {
  for (const auto& [stage, name] : kStageNames) {
    if (stage == s) return name;
  }
  return "unknown";
}

Stage parse_stage(std::string_view name) {
  for (const auto& [stage, n] : kStageNames) {
    if (n == name) return stage;
  }
  throw DataError("unknown analyzer stage: " + std::string(name));
}

const StopwordSet& builtin_stopwords(std::string_view lang) {
  if (lang == "en") return kEnglishStopwords;
  if (lang == "de") return kGermanStopwords;
  throw UsageError("no analyzer profile for language '" + std::string(lang) + "'");
}

StopwordSet parse_stopwords(std::string_view content) {
  StopwordSet words;
  for (auto line : text::split(content, '\n')) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto word = text::trim(line);
    if (!word.empty()) words.insert(text::lowercase(word));
  }
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) { return parse_stopwords(io::read_file(path)); }

std::vector<std::string> tokenize(std::string_view input) {
  const auto cps = text::decode_utf8(input);
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (text::is_word_char(cp)) {
      text::append_utf8(current, cp);
    } else if (is_apostrophe(cp) && !current.empty() && i + 1 < cps.size() && text::is_word_char(cps[i + 1])) {
      text::append_utf8(current, cp);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string strip_english_possessive(std::string_view term) {
  for (std::string_view suffix : {"'s", "'S", "’s", "’S"}) {
    if (term.size() > suffix.size() && term.ends_with(suffix)) {
      return std::string(term.substr(0, term.size() - suffix.size()));
    }
  }
  return std::string(term);
}

std::string german_normalize(std::string_view term) {
  std::string out;
  out.reserve(term.size());
  for (char32_t cp : text::decode_utf8(term)) {
    switch (cp) {
      case U'ä': out.push_back('a'); break;
      case U'ö': out.push_back('o'); break;
      case U'ü': out.push_back('u'); break;
      case U'ß': out += "ss"; break;
      default: text::append_utf8(out, cp);
    }
  }
  return out;
}

std::string german_light_stem(std::string_view term) {
  constexpr std::size_t kMinStem = 4;
  const std::size_t length = text::decode_utf8(term).size();
  for (std::string_view suffix : {"ern", "em", "en", "er", "es", "e", "s"}) {
    if (term.ends_with(suffix) && length >= kMinStem + suffix.size()) {
      return std::string(term.substr(0, term.size() - suffix.size()));
    }
  }
  return std::string(term);
}

AnalyzerChain::AnalyzerChain(std::string lang, std::vector<Stage> stages, StopwordSet stopwords)
    : lang_(std::move(lang)), stages_(std::move(stages)), stopwords_(std::move(stopwords)) {}

AnalyzerChain AnalyzerChain::for_language(std::string_view lang) {
  return for_language(lang, builtin_stopwords(lang));
}

AnalyzerChain AnalyzerChain::for_language(std::string_view lang, StopwordSet stopwords) {
  if (lang == "en") {
    return AnalyzerChain("en",
                         {Stage::tokenize, Stage::en_possessive, Stage::lowercase, Stage::stopwords,
                          Stage::porter_stem},
                         std::move(stopwords));
  }
  if (lang == "de") {
    return AnalyzerChain("de",
                         {Stage::tokenize, Stage::lowercase, Stage::stopwords, Stage::de_normalize,
                          Stage::de_light_stem},
                         std::move(stopwords));
  }
  throw UsageError("no analyzer profile for language '" + std::string(lang) + "'");
}

AnalyzerChain AnalyzerChain::from_parts(std::string lang, std::vector<Stage> stages, StopwordSet stopwords) {
  if (stages.empty() || stages.front() != Stage::tokenize) {
    throw DataError("analyzer chain for '" + lang + "' must start with tokenize");
  }
  return AnalyzerChain(std::move(lang), std::move(stages), std::move(stopwords));
}

std::string AnalyzerChain::analyze_token(std::string_view token) const {
  std::string t(token);
  for (Stage stage : stages_) {
    switch (stage) {
      case Stage::tokenize:
        break;
      case Stage::stopwords:
        if (stopwords_.contains(t)) return {};
        break;
      case Stage::lowercase:
        t = text::lowercase(t);
        break;
      case Stage::en_possessive:
        t = strip_english_possessive(t);
        break;
      case Stage::porter_stem:
        t = porter_stem(t);
        break;
      case Stage::de_normalize:
        t = german_normalize(t);
        break;
      case Stage::de_light_stem:
        t = german_light_stem(t);
        break;
    }
    if (t.empty()) return {};
  }
  return t;
}

std::vector<Token> AnalyzerChain::analyze(std::string_view input) const {
  std::vector<Token> out;
  std::uint32_t position = 0;
  for (const auto& raw : tokenize(input)) {
    auto t = analyze_token(raw);
    if (t.empty()) continue;
    out.push_back(Token{std::move(t), position++});
  }
  return out;
}

std::vector<std::string> AnalyzerChain::terms(std::string_view input) const {
  std::vector<std::string> out;
  for (auto& tok : analyze(input)) out.push_back(std::move(tok.text));
  return out;
}

bool AnalyzerChain::is_stopword(std::string_view word) const {
  return stopwords_.contains(text::lowercase(word));
}

AnalyzerSet default_analyzers() {
  AnalyzerSet set;
  set.emplace("en", AnalyzerChain::for_language("en"));
  set.emplace("de", AnalyzerChain::for_language("de"));
  return set;
}

}  // namespace sparse_expand
