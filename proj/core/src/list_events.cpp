#include "eventforge/list_events.hpp"

#include <cctype>
#include <istream>
#include <map>

#include "eventforge/text.hpp"
#include "eventforge/tsv.hpp"

namespace eventforge {

namespace {

// Month-name tables, folded form. English carries the usual three-letter
// abbreviations; Russian needs both nominative (titles) and genitive (dates)
// forms.
const std::map<std::string, unsigned>& month_table(std::string_view language) {
    static const std::map<std::string, std::map<std::string, unsigned>> tables = {
        {"en",
         {{"january", 1}, {"february", 2}, {"march", 3}, {"april", 4}, {"may", 5}, {"june", 6},
          {"july", 7}, {"august", 8}, {"september", 9}, {"october", 10}, {"november", 11},
          {"december", 12}, {"jan", 1}, {"feb", 2}, {"mar", 3}, {"apr", 4}, {"jun", 6},
          {"jul", 7}, {"aug", 8}, {"sep", 9}, {"sept", 9}, {"oct", 10}, {"nov", 11},
          {"dec", 12}}},
        {"de",
         {{"januar", 1}, {"februar", 2}, {"marz", 3}, {"april", 4}, {"mai", 5}, {"juni", 6},
          {"juli", 7}, {"august", 8}, {"september", 9}, {"oktober", 10}, {"november", 11},
          {"dezember", 12}}},
        {"fr",
         {{"janvier", 1}, {"fevrier", 2}, {"mars", 3}, {"avril", 4}, {"mai", 5}, {"juin", 6},
          {"juillet", 7}, {"aout", 8}, {"septembre", 9}, {"octobre", 10}, {"novembre", 11},
          {"decembre", 12}}},
        {"ru",
         {{"январь", 1}, {"февраль", 2}, {"март", 3}, {"апрель", 4}, {"май", 5}, {"июнь", 6},
          {"июль", 7}, {"август", 8}, {"сентябрь", 9}, {"октябрь", 10}, {"ноябрь", 11},
          {"декабрь", 12}, {"января", 1}, {"февраля", 2}, {"марта", 3}, {"апреля", 4},
          {"мая", 5}, {"июня", 6}, {"июля", 7}, {"августа", 8}, {"сентября", 9},
          {"октября", 10}, {"ноября", 11}, {"декабря", 12}}},
        {"pt",
         {{"janeiro", 1}, {"fevereiro", 2}, {"marco", 3}, {"abril", 4}, {"maio", 5},
          {"junho", 6}, {"julho", 7}, {"agosto", 8}, {"setembro", 9}, {"outubro", 10},
          {"novembro", 11}, {"dezembro", 12}}},
    };
    static const std::map<std::string, unsigned> empty;
    auto it = tables.find(std::string(language));
    return it == tables.end() ? empty : it->second;
}

// The "<year> in <topic>" connective per language.
std::string_view in_word(std::string_view language) {
    if (language == "en" || language == "de") return "in";
    if (language == "fr") return "en";
    if (language == "ru") return "в";
    if (language == "pt") return "em";
    return "in";
}

std::optional<unsigned> lookup_month(std::string_view token, std::string_view language) {
    std::string folded = text::fold_key(token);
    const auto& table = month_table(language);
    auto it = table.find(folded);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

bool parse_year_token(std::string_view token, int& year) {
    if (token.size() < 3 || token.size() > 4) return false;
    for (char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    year = std::stoi(std::string(token));
    return true;
}

// Day tokens may carry a trailing '.' (German style "11. August").
bool parse_day_token(std::string_view token, unsigned& day) {
    if (!token.empty() && token.back() == '.') token.remove_suffix(1);
    if (token.empty() || token.size() > 2) return false;
    for (char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    unsigned v = static_cast<unsigned>(std::stoi(std::string(token)));
    if (v < 1 || v > 31) return false;
    day = v;
    return true;
}

// (month, day) from a two-token date phrase in either order.
std::optional<std::pair<unsigned, unsigned>> parse_month_day(std::string_view a,
                                                             std::string_view b,
                                                             std::string_view language) {
    unsigned day = 0;
    if (auto m = lookup_month(a, language); m && parse_day_token(b, day)) {
        return std::make_pair(*m, day);
    }
    if (auto m = lookup_month(b, language); m && parse_day_token(a, day)) {
        return std::make_pair(*m, day);
    }
    return std::nullopt;
}

}  // namespace

std::optional<TemporalTemplate> parse_list_title(std::string_view title,
                                                 std::string_view language) {
    auto tokens = text::split_ws(text::trim(title));
    if (tokens.empty()) return std::nullopt;

    TemporalTemplate out;

    // "1941"
    if (tokens.size() == 1 && parse_year_token(tokens[0], out.year)) {
        return out;
    }

    // "2007 in Science" (the topic may span several words)
    if (tokens.size() >= 3 && parse_year_token(tokens[0], out.year) &&
        text::fold_key(tokens[1]) == text::fold_key(in_word(language))) {
        std::string topic;
        for (std::size_t i = 2; i < tokens.size(); ++i) {
            if (!topic.empty()) topic += ' ';
            topic += tokens[i];
        }
        out.topic = topic;
        return out;
    }

    if (tokens.size() == 2) {
        // "July 1941" / "Juli 1941"
        if (auto m = lookup_month(tokens[0], language)) {
            if (parse_year_token(tokens[1], out.year)) {
                out.month = *m;
                return out;
            }
        }
        // "August 11" / "11. August" / "11 août": a recurring day page.
        if (auto md = parse_month_day(tokens[0], tokens[1], language)) {
            if (days_in_month(2000, md->first) >= md->second) {  // 2000 is a leap year
                out.recurring = true;
                out.month = md->first;
                out.day = md->second;
                return out;
            }
        }
    }

    return std::nullopt;
}

std::optional<TemporalScope> resolve_row_date(const TemporalTemplate& tmpl,
                                              std::string_view date_text,
                                              std::string_view language) {
    auto tokens = text::split_ws(text::trim(date_text));
    auto point = [](std::optional<FlexDate> d) -> std::optional<TemporalScope> {
        if (!d) return std::nullopt;
        return TemporalScope{d, d};
    };

    if (tmpl.recurring) {
        // Rows on "August 11" pages carry the year.
        if (tokens.size() != 1) return std::nullopt;
        int year = 0;
        if (!parse_year_token(tokens[0], year)) return std::nullopt;
        return point(FlexDate::make_day(year, tmpl.month, tmpl.day));
    }

    if (tmpl.month != 0) {
        // Month page: bare day number or nothing.
        if (tokens.empty()) return point(FlexDate::make_month(tmpl.year, tmpl.month));
        unsigned day = 0;
        if (tokens.size() == 1 && parse_day_token(tokens[0], day)) {
            return point(FlexDate::make_day(tmpl.year, tmpl.month, day));
        }
        return std::nullopt;
    }

    // Year page.
    if (tokens.empty()) return point(FlexDate::make_year(tmpl.year));
    if (tokens.size() == 1) {
        if (auto m = lookup_month(tokens[0], language)) {
            return point(FlexDate::make_month(tmpl.year, *m));
        }
        return std::nullopt;
    }
    if (tokens.size() == 2) {
        if (auto md = parse_month_day(tokens[0], tokens[1], language)) {
            return point(FlexDate::make_day(tmpl.year, md->first, md->second));
        }
    }
    return std::nullopt;
}

ListLoadResult load_event_list_records(const DatasetDescriptor& source, std::istream& in) {
    ListLoadResult result;
    std::map<std::pair<std::string, std::string>, std::optional<TemporalTemplate>> templates;

    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& fields) {
        ++result.rows;
        auto reject = [&](const std::string& why) {
            result.errors.push_back("[" + source.name + "] row " + std::to_string(line_no) +
                                    ": " + why);
        };
        if (fields.size() < 6) {
            reject("expected 6 columns (list_page, language, date_text, description, "
                   "linked_entities, source_url)");
            return;
        }
        const std::string& page = fields[0];
        const std::string& language = fields[1];
        const std::string& date_text = fields[2];
        const std::string& description = fields[3];

        if (std::string(text::trim(description)).empty()) {
            reject("empty description");
            return;
        }

        auto cached = templates.find({page, language});
        if (cached == templates.end()) {
            cached = templates.emplace(std::make_pair(page, language),
                                       parse_list_title(page, language)).first;
        }
        if (!cached->second) {
            reject("list page title has no temporal expression: " + page);
            return;
        }
        auto date = resolve_row_date(*cached->second, date_text, language);
        if (!date) {
            reject("unresolvable date text '" + date_text + "' on page " + page);
            return;
        }

        ListEventRecord rec;
        rec.source = source.name;
        rec.list_page = page;
        rec.language = language;
        rec.date = *date;
        rec.description = description;
        for (auto& link : text::split(fields[4], '|')) {
            if (!link.empty()) rec.linked_entities.push_back(std::move(link));
        }
        rec.url = fields[5];
        result.records.push_back(std::move(rec));
    });

    return result;
}

}  // namespace eventforge
