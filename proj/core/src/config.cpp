#include "eventforge/config.hpp"

#include <cctype>
#include <fstream>
#include <istream>

#include "eventforge/text.hpp"

namespace eventforge {

namespace {

bool looks_like_assignment(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() &&
           (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_' ||
            line[i] == '-' || line[i] == '.')) {
        ++i;
    }
    if (i == 0) return false;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return i < line.size() && line[i] == '=';
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::string current;  // "" = preamble
    cfg.sections_[current];
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": malformed section header");
            }
            current = std::string(text::trim(line.substr(1, line.size() - 2)));
            cfg.sections_[current];
            continue;
        }
        Section& sec = cfg.sections_[current];
        if (looks_like_assignment(line)) {
            std::size_t eq = line.find('=');
            std::string key(text::trim(line.substr(0, eq)));
            std::string val(text::trim(line.substr(eq + 1)));
            if (sec.values.count(key)) {
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
            }
            sec.values.emplace(std::move(key), std::move(val));
        } else {
            sec.rows.emplace_back(line_no, std::string(line));
        }
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    return parse(in, path.string());
}

bool ConfigFile::has_section(std::string_view name) const {
    return sections_.find(name) != sections_.end();
}

const ConfigFile::Section* ConfigFile::section(std::string_view name) const {
    auto it = sections_.find(name);
    return it == sections_.end() ? nullptr : &it->second;
}

std::optional<std::string> ConfigFile::value(std::string_view section_name,
                                             std::string_view key) const {
    const Section* sec = section(section_name);
    if (!sec) return std::nullopt;
    auto it = sec->values.find(std::string(key));
    if (it == sec->values.end()) return std::nullopt;
    return it->second;
}

std::string ConfigFile::value_or(std::string_view section_name, std::string_view key,
                                 std::string_view fallback) const {
    auto v = value(section_name, key);
    return v ? *v : std::string(fallback);
}

std::string ConfigFile::require(std::string_view section_name, std::string_view key) const {
    auto v = value(section_name, key);
    if (!v) {
        throw ConfigError(origin_ + ": missing required key '" + std::string(key) +
                          (section_name.empty() ? std::string()
                                                : "' in section [" + std::string(section_name)) +
                          "]");
    }
    return *v;
}

std::vector<std::vector<std::string>> ConfigFile::rows(std::string_view section_name,
                                                       std::size_t columns) const {
    return rows(section_name, columns, columns);
}

std::vector<std::vector<std::string>> ConfigFile::rows(std::string_view section_name,
                                                       std::size_t min_columns,
                                                       std::size_t columns) const {
    std::vector<std::vector<std::string>> out;
    const Section* sec = section(section_name);
    if (!sec) return out;
    for (const auto& [line_no, raw] : sec->rows) {
        auto fields = text::split_ws(raw, columns);
        if (fields.size() < min_columns) {
            throw ConfigError(origin_ + ":" + std::to_string(line_no) + ": section [" +
                              std::string(section_name) + "] row needs at least " +
                              std::to_string(min_columns) + " columns");
        }
        out.push_back(std::move(fields));
    }
    return out;
}

}  // namespace eventforge
