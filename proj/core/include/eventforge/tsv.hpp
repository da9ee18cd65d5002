#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eventforge::tsv {

// Field escaping: tab, newline, carriage return and backslash are encoded
// as \t \n \r \\ so any string round-trips through one TSV cell.
std::string escape(std::string_view field);
std::string unescape(std::string_view field);

std::string format_row(const std::vector<std::string>& fields);
std::vector<std::string> parse_row(std::string_view line);

// Reads rows from a stream, skipping blank lines and lines whose first
// non-blank character is '#'. Calls on_row(line_number, fields).
using RowSink = std::function<void(std::size_t, std::vector<std::string>&&)>;
void for_each_row(std::istream& in, const RowSink& on_row);

}  // namespace eventforge::tsv
