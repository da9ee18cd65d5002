#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eventforge/date.hpp"
#include "eventforge/source.hpp"

namespace eventforge {

// Temporal pattern carried by an event-list page title. Four shapes are
// recognized: "1941", "2007 in Science", "July 1941" and recurring day
// pages such as "August 11" (their rows must supply the year).
struct TemporalTemplate {
    int year = 0;
    unsigned month = 0;
    unsigned day = 0;
    bool recurring = false;
    std::string topic;

    friend bool operator==(const TemporalTemplate&, const TemporalTemplate&) = default;
};

std::optional<TemporalTemplate> parse_list_title(std::string_view title,
                                                 std::string_view language);

// Resolves one row's date text against the page template. Accepted forms
// depend on the template: "February 12", "Feb 12", "12 February",
// "12. Februar", a bare day number on month pages, a year on recurring
// pages, or empty (page granularity).
std::optional<TemporalScope> resolve_row_date(const TemporalTemplate& tmpl,
                                              std::string_view date_text,
                                              std::string_view language);

struct ListEventRecord {
    std::string source;
    std::string list_page;
    std::string language;
    TemporalScope date;
    std::string description;
    std::vector<std::string> linked_entities;
    std::string url;
};

struct ListLoadResult {
    std::vector<ListEventRecord> records;
    std::vector<std::string> errors;
    std::size_t rows = 0;
};

// TSV columns: list_page, language, date_text, description,
// linked_entities (|-separated), source_url. Rows with an unresolvable
// date or an empty description are reported and skipped.
ListLoadResult load_event_list_records(const DatasetDescriptor& source, std::istream& in);

}  // namespace eventforge
