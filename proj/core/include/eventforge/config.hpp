#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eventforge {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plain text config: `key = value` pairs plus named [sections]. A section
// holds key/value pairs and/or table rows. Rows are whitespace-separated
// columns; when a reader asks for N columns the last one takes the rest of
// the line, so patterns and titles with spaces survive. '#' starts a
// comment line.
class ConfigFile {
public:
    struct Section {
        std::map<std::string, std::string> values;
        std::vector<std::pair<std::size_t, std::string>> rows;  // (line, raw text)
    };

    static ConfigFile parse(std::istream& in, const std::string& origin = "<stream>");
    static ConfigFile load(const std::filesystem::path& path);

    bool has_section(std::string_view name) const;
    const Section* section(std::string_view name) const;

    // Key lookup in a section ("" = the preamble before any section).
    std::optional<std::string> value(std::string_view section, std::string_view key) const;
    std::string value_or(std::string_view section, std::string_view key,
                         std::string_view fallback) const;
    std::string require(std::string_view section, std::string_view key) const;

    // Table rows of a section split into exactly `columns` fields (last
    // greedy). Rows with fewer fields raise ConfigError.
    std::vector<std::vector<std::string>> rows(std::string_view section,
                                               std::size_t columns) const;
    // As above but allows between min_columns and columns fields.
    std::vector<std::vector<std::string>> rows(std::string_view section, std::size_t min_columns,
                                               std::size_t columns) const;

    const std::string& origin() const { return origin_; }

private:
    std::string origin_;
    std::map<std::string, Section, std::less<>> sections_;
};

}  // namespace eventforge
