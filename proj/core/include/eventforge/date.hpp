#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "eventforge/rdf.hpp"

namespace eventforge {

enum class Granularity : std::uint8_t { year, month, day };

bool is_leap_year(int year);
unsigned days_in_month(int year, unsigned month);

// A date with explicit precision. Granularity is part of the value: 1941,
// 1941-01 and 1941-01-01 are three distinct FlexDates.
class FlexDate {
public:
    FlexDate() = default;

    static std::optional<FlexDate> make_year(int year);
    static std::optional<FlexDate> make_month(int year, unsigned month);
    static std::optional<FlexDate> make_day(int year, unsigned month, unsigned day);

    // Accepts "1941", "1941-02", "1941-02-17" with an optional leading '-'
    // for BCE years and an ignored trailing 'Z'. Granularity follows the
    // lexical shape.
    static std::optional<FlexDate> parse(std::string_view lexical);

    // Accepts literals typed xsd:date / xsd:gYearMonth / xsd:gYear (or
    // untyped literals with one of those shapes).
    static std::optional<FlexDate> from_literal(const rdf::Literal& literal);

    int year() const { return year_; }
    unsigned month() const { return month_; }  // 0 when granularity == year
    unsigned day() const { return day_; }      // 0 unless granularity == day
    Granularity granularity() const { return granularity_; }

    std::string to_lexical() const;
    const char* xsd_datatype() const;
    rdf::Literal to_literal() const;

    struct Ymd {
        int year = 0;
        unsigned month = 0;
        unsigned day = 0;
        friend auto operator<=>(const Ymd&, const Ymd&) = default;
    };

    // The instant range a value of this granularity covers.
    Ymd earliest() const;
    Ymd latest() const;

    // Unit-boundary artifacts at day granularity: first/last day of a month
    // (which covers Jan 1 / Dec 31). Coarser granularities are never
    // boundary dates.
    bool is_begin_boundary() const;
    bool is_end_boundary() const;

    friend auto operator<=>(const FlexDate&, const FlexDate&) = default;

private:
    FlexDate(int y, unsigned m, unsigned d, Granularity g)
        : year_(y), month_(m), day_(d), granularity_(g) {}

    int year_ = 0;
    unsigned month_ = 0;
    unsigned day_ = 0;
    Granularity granularity_ = Granularity::year;
};

// Begin/end pair; either side may be open.
struct TemporalScope {
    std::optional<FlexDate> begin;
    std::optional<FlexDate> end;

    bool has_any() const { return begin.has_value() || end.has_value(); }

    // begin <= end under the earliest-instant interpretation; vacuously true
    // when either side is open.
    bool well_ordered() const;

    // Closed interval covered by the scope; a missing side collapses onto
    // the other. nullopt when both sides are open.
    std::optional<std::pair<FlexDate::Ymd, FlexDate::Ymd>> interval() const;

    bool intersects(const TemporalScope& other) const;

    friend bool operator==(const TemporalScope&, const TemporalScope&) = default;
};

}  // namespace eventforge
