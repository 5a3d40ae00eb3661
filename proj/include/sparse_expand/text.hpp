#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sparse_expand::text {

// UTF-8 helpers. Invalid byte sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t cp);

// Letter/digit classification used by the tokenizer. Covers ASCII, Latin-1,
// the Latin extensions, Greek and Cyrillic exactly; other scripts are
// treated as word characters unless they fall in a known punctuation,
// symbol or space block.
bool is_word_char(char32_t cp);
char32_t to_lower(char32_t cp);
std::string lowercase(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

// Case-insensitive comparison key: lowercased, whitespace-collapsed.
std::string fold_key(std::string_view s);

// Percent-encoding for titles stored as file names. Everything outside
// [A-Za-z0-9._~-] is written as %XX.
std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);

}  // namespace sparse_expand::text
