#include <random>

#include "doctest.h"
#include "eventforge/date.hpp"

using namespace eventforge;

namespace {

constexpr const char* kDate = "http://www.w3.org/2001/XMLSchema#date";
constexpr const char* kYm = "http://www.w3.org/2001/XMLSchema#gYearMonth";
constexpr const char* kYear = "http://www.w3.org/2001/XMLSchema#gYear";

}  // namespace

TEST_CASE("timestamp literal fixture covers all granularities") {
    struct Case {
        const char* lexical;
        const char* datatype;
        int year;
        unsigned month;
        unsigned day;
        Granularity gran;
    };
    // Hand-checked lexical/value pairs.
    static const Case cases[] = {
        {"1941-02-17", kDate, 1941, 2, 17, Granularity::day},
        {"1941-02-17Z", kDate, 1941, 2, 17, Granularity::day},
        {"2013-01-20", kDate, 2013, 1, 20, Granularity::day},
        {"1945-09-02", kDate, 1945, 9, 2, Granularity::day},
        {"2000-02-29", kDate, 2000, 2, 29, Granularity::day},
        {"1996-02-29", kDate, 1996, 2, 29, Granularity::day},
        {"1941-12-31", kDate, 1941, 12, 31, Granularity::day},
        {"1941-01-01", kDate, 1941, 1, 1, Granularity::day},
        {"0044-03-15", kDate, 44, 3, 15, Granularity::day},
        {"-0044-03-15", kDate, -44, 3, 15, Granularity::day},
        {"1941-02", kYm, 1941, 2, 0, Granularity::month},
        {"2008-12", kYm, 2008, 12, 0, Granularity::month},
        {"1918-11", kYm, 1918, 11, 0, Granularity::month},
        {"0100-01", kYm, 100, 1, 0, Granularity::month},
        {"1941", kYear, 1941, 0, 0, Granularity::year},
        {"2007", kYear, 2007, 0, 0, Granularity::year},
        {"0476", kYear, 476, 0, 0, Granularity::year},
        {"-0753", kYear, -753, 0, 0, Granularity::year},
        {"1066", kYear, 1066, 0, 0, Granularity::year},
        {"2020", kYear, 2020, 0, 0, Granularity::year},
    };
    for (const Case& c : cases) {
        CAPTURE(c.lexical);
        auto d = FlexDate::from_literal(rdf::typed_literal(c.lexical, c.datatype));
        REQUIRE(d.has_value());
        CHECK(d->year() == c.year);
        CHECK(d->month() == c.month);
        CHECK(d->day() == c.day);
        CHECK(d->granularity() == c.gran);
    }
}

TEST_CASE("invalid timestamps are rejected") {
    CHECK_FALSE(FlexDate::parse("1941-02-30"));
    CHECK_FALSE(FlexDate::parse("1941-13"));
    CHECK_FALSE(FlexDate::parse("1900-02-29"));  // 1900 is not a leap year
    CHECK_FALSE(FlexDate::parse("1941-2-17"));   // month must be two digits
    CHECK_FALSE(FlexDate::parse("abc"));
    CHECK_FALSE(FlexDate::parse(""));
    // Datatype and shape must agree.
    CHECK_FALSE(FlexDate::from_literal(rdf::typed_literal("1941", kDate)));
    CHECK_FALSE(FlexDate::from_literal(rdf::typed_literal("1941-02-17", kYear)));
    // Non-date datatypes are not timestamps.
    CHECK_FALSE(FlexDate::from_literal(
        rdf::typed_literal("1941", "http://www.w3.org/2001/XMLSchema#integer")));
}

TEST_CASE("parse-format round trip on random dates") {
    std::mt19937 rng(11);
    for (int i = 0; i < 3000; ++i) {
        int year = std::uniform_int_distribution<int>(-800, 2400)(rng);
        unsigned month = std::uniform_int_distribution<unsigned>(1, 12)(rng);
        std::optional<FlexDate> d;
        switch (i % 3) {
            case 0: d = FlexDate::make_year(year); break;
            case 1: d = FlexDate::make_month(year, month); break;
            default: {
                unsigned day =
                    std::uniform_int_distribution<unsigned>(1, days_in_month(year, month))(rng);
                d = FlexDate::make_day(year, month, day);
            }
        }
        REQUIRE(d);
        auto back = FlexDate::parse(d->to_lexical());
        REQUIRE(back);
        CHECK(*back == *d);
        auto lit_back = FlexDate::from_literal(d->to_literal());
        REQUIRE(lit_back);
        CHECK(*lit_back == *d);
    }
}

TEST_CASE("earliest and latest instants") {
    auto y = *FlexDate::make_year(1941);
    CHECK(y.earliest() == FlexDate::Ymd{1941, 1, 1});
    CHECK(y.latest() == FlexDate::Ymd{1941, 12, 31});
    auto m = *FlexDate::make_month(1941, 2);
    CHECK(m.earliest() == FlexDate::Ymd{1941, 2, 1});
    CHECK(m.latest() == FlexDate::Ymd{1941, 2, 28});
    auto leap = *FlexDate::make_month(1940, 2);
    CHECK(leap.latest() == FlexDate::Ymd{1940, 2, 29});
}

TEST_CASE("boundary flags only fire at day granularity") {
    CHECK(FlexDate::make_day(1941, 1, 1)->is_begin_boundary());
    CHECK(FlexDate::make_day(1941, 7, 1)->is_begin_boundary());
    CHECK_FALSE(FlexDate::make_day(1941, 7, 2)->is_begin_boundary());
    CHECK(FlexDate::make_day(1941, 12, 31)->is_end_boundary());
    CHECK(FlexDate::make_day(1941, 6, 30)->is_end_boundary());
    CHECK(FlexDate::make_day(1940, 2, 29)->is_end_boundary());
    CHECK_FALSE(FlexDate::make_day(1941, 2, 28)->is_begin_boundary());
    // Bare years and months are weaker evidence, not boundary artifacts.
    CHECK_FALSE(FlexDate::make_year(1941)->is_begin_boundary());
    CHECK_FALSE(FlexDate::make_month(1941, 1)->is_begin_boundary());
    CHECK_FALSE(FlexDate::make_year(1941)->is_end_boundary());
}

TEST_CASE("scope ordering and intersection") {
    TemporalScope ww2{FlexDate::make_day(1939, 9, 1), FlexDate::make_day(1945, 9, 2)};
    CHECK(ww2.well_ordered());

    TemporalScope feb41{FlexDate::make_day(1941, 2, 12), FlexDate::make_day(1941, 2, 28)};
    CHECK(ww2.intersects(feb41));
    CHECK(feb41.intersects(ww2));

    // Coarse-granularity record date intersects at the coarser unit.
    TemporalScope y1941{FlexDate::make_year(1941), std::nullopt};
    CHECK(y1941.intersects(feb41));

    TemporalScope y2005{FlexDate::make_year(2005), std::nullopt};
    CHECK_FALSE(y2005.intersects(feb41));

    TemporalScope backwards{FlexDate::make_day(2008, 1, 1), FlexDate::make_day(2004, 1, 1)};
    CHECK_FALSE(backwards.well_ordered());

    TemporalScope open{};
    CHECK_FALSE(open.intersects(ww2));
    CHECK_FALSE(open.has_any());
}
