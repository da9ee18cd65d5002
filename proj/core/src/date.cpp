#include "eventforge/date.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace eventforge {

namespace {

constexpr const char* kXsdDate = "http://www.w3.org/2001/XMLSchema#date";
constexpr const char* kXsdGYearMonth = "http://www.w3.org/2001/XMLSchema#gYearMonth";
constexpr const char* kXsdGYear = "http://www.w3.org/2001/XMLSchema#gYear";

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::optional<unsigned> parse_unsigned(std::string_view s) {
    if (!all_digits(s)) return std::nullopt;
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

unsigned days_in_month(int year, unsigned month) {
    static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return kDays[month - 1];
}

std::optional<FlexDate> FlexDate::make_year(int year) {
    return FlexDate(year, 0, 0, Granularity::year);
}

std::optional<FlexDate> FlexDate::make_month(int year, unsigned month) {
    if (month < 1 || month > 12) return std::nullopt;
    return FlexDate(year, month, 0, Granularity::month);
}

std::optional<FlexDate> FlexDate::make_day(int year, unsigned month, unsigned day) {
    if (month < 1 || month > 12) return std::nullopt;
    if (day < 1 || day > days_in_month(year, month)) return std::nullopt;
    return FlexDate(year, month, day, Granularity::day);
}

std::optional<FlexDate> FlexDate::parse(std::string_view lexical) {
    if (lexical.empty()) return std::nullopt;
    if (lexical.back() == 'Z') lexical.remove_suffix(1);
    bool negative = false;
    if (!lexical.empty() && lexical.front() == '-') {
        negative = true;
        lexical.remove_prefix(1);
    }
    // year [- month [- day]]
    std::size_t first_dash = lexical.find('-');
    std::string_view year_part =
        first_dash == std::string_view::npos ? lexical : lexical.substr(0, first_dash);
    if (year_part.size() < 1 || year_part.size() > 9 || !all_digits(year_part)) {
        return std::nullopt;
    }
    int year = 0;
    std::from_chars(year_part.data(), year_part.data() + year_part.size(), year);
    if (negative) year = -year;
    if (first_dash == std::string_view::npos) return make_year(year);

    std::string_view rest = lexical.substr(first_dash + 1);
    std::size_t second_dash = rest.find('-');
    std::string_view month_part =
        second_dash == std::string_view::npos ? rest : rest.substr(0, second_dash);
    auto month = parse_unsigned(month_part);
    if (!month || month_part.size() != 2) return std::nullopt;
    if (second_dash == std::string_view::npos) return make_month(year, *month);

    std::string_view day_part = rest.substr(second_dash + 1);
    auto day = parse_unsigned(day_part);
    if (!day || day_part.size() != 2) return std::nullopt;
    return make_day(year, *month, *day);
}

std::optional<FlexDate> FlexDate::from_literal(const rdf::Literal& literal) {
    if (!literal.datatype.empty() && literal.datatype != kXsdDate &&
        literal.datatype != kXsdGYearMonth && literal.datatype != kXsdGYear) {
        return std::nullopt;
    }
    auto parsed = parse(literal.lexical);
    if (!parsed) return std::nullopt;
    // When a datatype is present the lexical shape has to agree with it.
    if (literal.datatype == kXsdDate && parsed->granularity() != Granularity::day) {
        return std::nullopt;
    }
    if (literal.datatype == kXsdGYearMonth && parsed->granularity() != Granularity::month) {
        return std::nullopt;
    }
    if (literal.datatype == kXsdGYear && parsed->granularity() != Granularity::year) {
        return std::nullopt;
    }
    return parsed;
}

std::string FlexDate::to_lexical() const {
    char buf[32];
    int abs_year = year_ < 0 ? -year_ : year_;
    const char* sign = year_ < 0 ? "-" : "";
    switch (granularity_) {
        case Granularity::year:
            std::snprintf(buf, sizeof buf, "%s%04d", sign, abs_year);
            break;
        case Granularity::month:
            std::snprintf(buf, sizeof buf, "%s%04d-%02u", sign, abs_year, month_);
            break;
        case Granularity::day:
            std::snprintf(buf, sizeof buf, "%s%04d-%02u-%02u", sign, abs_year, month_, day_);
            break;
    }
    return buf;
}

const char* FlexDate::xsd_datatype() const {
    switch (granularity_) {
        case Granularity::year: return kXsdGYear;
        case Granularity::month: return kXsdGYearMonth;
        case Granularity::day: return kXsdDate;
    }
    return kXsdDate;
}

rdf::Literal FlexDate::to_literal() const {
    return rdf::typed_literal(to_lexical(), xsd_datatype());
}

FlexDate::Ymd FlexDate::earliest() const {
    switch (granularity_) {
        case Granularity::year: return {year_, 1, 1};
        case Granularity::month: return {year_, month_, 1};
        case Granularity::day: return {year_, month_, day_};
    }
    return {year_, 1, 1};
}

FlexDate::Ymd FlexDate::latest() const {
    switch (granularity_) {
        case Granularity::year: return {year_, 12, 31};
        case Granularity::month: return {year_, month_, days_in_month(year_, month_)};
        case Granularity::day: return {year_, month_, day_};
    }
    return {year_, 12, 31};
}

bool FlexDate::is_begin_boundary() const {
    return granularity_ == Granularity::day && day_ == 1;
}

bool FlexDate::is_end_boundary() const {
    return granularity_ == Granularity::day && day_ == days_in_month(year_, month_);
}

bool TemporalScope::well_ordered() const {
    if (!begin || !end) return true;
    return begin->earliest() <= end->earliest();
}

std::optional<std::pair<FlexDate::Ymd, FlexDate::Ymd>> TemporalScope::interval() const {
    if (!begin && !end) return std::nullopt;
    const FlexDate& lo = begin ? *begin : *end;
    const FlexDate& hi = end ? *end : *begin;
    return std::make_pair(lo.earliest(), hi.latest());
}

bool TemporalScope::intersects(const TemporalScope& other) const {
    auto a = interval();
    auto b = other.interval();
    if (!a || !b) return false;
    return a->first <= b->second && b->first <= a->second;
}

}  // namespace eventforge
