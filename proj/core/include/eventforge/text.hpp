#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eventforge::text {

std::string_view trim(std::string_view s);

// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string> split(std::string_view s, char delim);

// Splits on runs of spaces/tabs, dropping empty tokens. If max_fields > 0,
// the last field receives the untokenized remainder of the line (trimmed).
std::vector<std::string> split_ws(std::string_view s, std::size_t max_fields = 0);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

std::string to_lower_ascii(std::string_view s);

// Normalizes a string for fuzzy key comparisons: lowercases ASCII and the
// Latin-1/Latin-Extended-A blocks, strips combining accents from those
// blocks, maps '_' to ' ' and collapses whitespace runs.
std::string fold_key(std::string_view s);

// True when `needle` occurs in `haystack` after fold_key on both sides.
bool folded_contains(std::string_view haystack, std::string_view needle);

}  // namespace eventforge::text
