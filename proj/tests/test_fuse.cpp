#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eventforge/fuse.hpp"

using namespace eventforge;

namespace {

SourceRegistry trust() {
    return SourceRegistry::from_specs(
        {{"wikidata", "", "", 0, "http://wd.test/", "x", {}},
         {"dbpedia-en", "", "", 0, "http://dbp.test/", "x", {}},
         {"wikipedia-en", "", "", 0, "https://en.wikipedia.org/wiki/", "x", {}},
         {"wcep", "", "", 0, "", "x", {}},
         {"yago", "", "", 0, "http://yago.test/", "x", {}}},
        "http://kg.test");
}

TimeCandidate begin(const char* lex, const std::string& source) {
    return {*FlexDate::parse(lex), source, TimePosition::begin};
}

TimeCandidate end_of(const char* lex, const std::string& source) {
    return {*FlexDate::parse(lex), source, TimePosition::end};
}

}  // namespace

TEST_CASE("rule i: boundary dates lose to solid alternatives") {
    SourceRegistry reg = trust();
    auto got = fuse_time({begin("1941-01-01", "yago"), begin("1941-02-17", "dbpedia-en")},
                         TimePosition::begin, reg);
    REQUIRE(got);
    CHECK(*got == *FlexDate::parse("1941-02-17"));

    // All-boundary candidate sets keep everything (and fall through).
    got = fuse_time({begin("1941-01-01", "yago"), begin("1941-01-01", "wikidata")},
                    TimePosition::begin, reg);
    REQUIRE(got);
    CHECK(*got == *FlexDate::parse("1941-01-01"));

    // End position boundaries are Dec 31 / last day of month.
    got = fuse_time({end_of("1945-12-31", "yago"), end_of("1945-09-02", "wikidata")},
                    TimePosition::end, reg);
    REQUIRE(got);
    CHECK(*got == *FlexDate::parse("1945-09-02"));

    // A bare year is weaker evidence, not a boundary: it survives rule i
    // and then loses by trust only.
    got = fuse_time({begin("1941", "yago"), begin("1941-02-17", "dbpedia-en")},
                    TimePosition::begin, reg);
    REQUIRE(got);
    CHECK(*got == *FlexDate::parse("1941-02-17"));  // dbpedia-en outranks yago
}

TEST_CASE("rule ii: strict plurality wins") {
    SourceRegistry reg = trust();
    auto got = fuse_time({begin("1941-02-17", "yago"), begin("1941-02-17", "dbpedia-en"),
                          begin("1941-02-18", "wikidata")},
                         TimePosition::begin, reg);
    REQUIRE(got);
    CHECK(*got == *FlexDate::parse("1941-02-17"));
}

TEST_CASE("rule iii: trusted order breaks ties") {
    SourceRegistry reg = trust();
    auto got = fuse_time({begin("1941-02-17", "yago"), begin("1941-02-18", "wikidata")},
                         TimePosition::begin, reg);
    REQUIRE(got);
    CHECK(*got == *FlexDate::parse("1941-02-18"));

    // Same day at different granularity is a distinct value: no plurality,
    // trust decides.
    got = fuse_time({begin("1941-02", "yago"), begin("1941-02-17", "yago"),
                     begin("1941-02", "wcep")},
                    TimePosition::begin, reg);
    REQUIRE(got);
    // Groups: {1941-02: 2} vs {1941-02-17: 1} -> plurality 1941-02.
    CHECK(*got == *FlexDate::parse("1941-02"));
}

TEST_CASE("fuse_time basics") {
    SourceRegistry reg = trust();
    CHECK_FALSE(fuse_time({}, TimePosition::begin, reg));
    // Position filter: end candidates don't answer begin queries.
    CHECK_FALSE(fuse_time({end_of("1945-09-02", "wikidata")}, TimePosition::begin, reg));

    // Unanimous value returns unchanged; result is drawn from candidates;
    // order does not matter.
    std::vector<TimeCandidate> cs = {begin("1941-02-17", "yago"), begin("1941-02-17", "wikidata"),
                                     begin("1941-02-17", "wcep")};
    auto got = fuse_time(cs, TimePosition::begin, reg);
    REQUIRE(got);
    CHECK(*got == *FlexDate::parse("1941-02-17"));
}

TEST_CASE("random candidate sets: result comes from the pool, order-invariant") {
    SourceRegistry reg = trust();
    std::mt19937 rng(5150);
    const char* sources[] = {"wikidata", "dbpedia-en", "wikipedia-en", "wcep", "yago"};
    for (int trial = 0; trial < 500; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 6)(rng);
        std::vector<TimeCandidate> cs;
        for (int k = 0; k < n; ++k) {
            int y = std::uniform_int_distribution<int>(1938, 1946)(rng);
            unsigned m = std::uniform_int_distribution<unsigned>(1, 12)(rng);
            unsigned d = std::uniform_int_distribution<unsigned>(1, days_in_month(y, m))(rng);
            FlexDate date = *FlexDate::make_day(y, m, d);
            switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
                case 0: date = *FlexDate::make_year(y); break;
                case 1: date = *FlexDate::make_month(y, m); break;
                default: break;
            }
            cs.push_back({date, sources[std::uniform_int_distribution<int>(0, 4)(rng)],
                          TimePosition::begin});
        }
        auto got = fuse_time(cs, TimePosition::begin, reg);
        REQUIRE(got);
        bool from_pool = std::any_of(cs.begin(), cs.end(),
                                     [&](const TimeCandidate& c) { return c.value == *got; });
        CHECK(from_pool);

        std::shuffle(cs.begin(), cs.end(), rng);
        auto again = fuse_time(cs, TimePosition::begin, reg);
        REQUIRE(again);
        CHECK(*again == *got);
    }
}

TEST_CASE("location fusion drops containers of other members") {
    PlaceHierarchy h;
    h.add("Paris", "France");
    h.add("Lyon", "France");
    CHECK(fuse_locations({"Paris", "France", "Lyon"}, h) ==
          std::set<std::string>{"Paris", "Lyon"});
    CHECK(fuse_locations({"France"}, h) == std::set<std::string>{"France"});
    CHECK(fuse_locations({}, h).empty());

    PlaceHierarchy chain;
    chain.add("a", "b");
    chain.add("b", "c");
    CHECK(fuse_locations({"a", "b", "c"}, chain) == std::set<std::string>{"a"});
}

TEST_CASE("location fusion equals the ancestor-removal oracle and is idempotent") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 500; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 30)(rng);
        PlaceHierarchy h;
        auto name = [](int k) { return "p" + std::to_string(k); };
        for (int child = 1; child < n; ++child) {
            int m = std::uniform_int_distribution<int>(0, 2)(rng);
            for (int k = 0; k < m; ++k) {
                h.add(name(child),
                      name(std::uniform_int_distribution<int>(0, child - 1)(rng)));
            }
        }
        std::set<std::string> input;
        for (int k = 0; k < n; ++k) {
            if (std::uniform_int_distribution<int>(0, 1)(rng)) input.insert(name(k));
        }

        auto got = fuse_locations(input, h);

        // Oracle: brute-force transitive containment via repeated expansion.
        auto contains = [&](const std::string& anc, const std::string& x) {
            std::set<std::string> reach{x};
            bool grown = true;
            while (grown) {
                grown = false;
                for (const auto& [child, parents] : h.parents) {
                    if (!reach.count(child)) continue;
                    for (const auto& p : parents) {
                        if (reach.insert(p).second) grown = true;
                    }
                }
            }
            return anc != x && reach.count(anc) > 0;
        };
        std::set<std::string> expect;
        for (const auto& cand : input) {
            bool is_container = false;
            for (const auto& other : input) {
                if (contains(cand, other)) is_container = true;
            }
            if (!is_container) expect.insert(cand);
        }
        CAPTURE(trial);
        CHECK(got == expect);
        CHECK(fuse_locations(got, h) == got);  // idempotent
        for (const auto& x : got) CHECK(input.count(x));
        if (!input.empty()) CHECK(!got.empty());
    }
}

TEST_CASE("place hierarchy cycles break deterministically with a warning") {
    PlaceHierarchy cyclic;
    cyclic.add("a", "b");
    cyclic.add("b", "c");
    cyclic.add("c", "a");
    std::vector<std::string> warnings;
    PlaceHierarchy dag = PlaceHierarchy::acyclic(cyclic, warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("cycle") != std::string::npos);
    // The surviving graph is acyclic: no node is its own ancestor.
    for (const auto& [node, _] : dag.parents) {
        CHECK_FALSE(dag.ancestors(node).count(node));
    }
    // Determinism.
    std::vector<std::string> warnings2;
    PlaceHierarchy dag2 = PlaceHierarchy::acyclic(cyclic, warnings2);
    CHECK(dag.parents == dag2.parents);
}

TEST_CASE("type fusion unions aligned types and counts the rest") {
    EntityStore store;
    RawEntity& wd = store.get_or_create({"wikidata", "Q1"});
    wd.types = {"http://wd.test/battle", "http://wd.test/obscure"};
    RawEntity& dbp = store.get_or_create({"dbpedia-en", "B"});
    dbp.types = {"http://dbp.test/MilitaryConflict"};

    IdentityCluster cluster;
    cluster.members = {wd.key, dbp.key};

    TypeAlignment alignment;
    alignment.to_target[{"wikidata", "http://wd.test/battle"}] =
        "http://dbpedia.org/ontology/MilitaryConflict";
    alignment.to_target[{"dbpedia-en", "http://dbp.test/MilitaryConflict"}] =
        "http://dbpedia.org/ontology/MilitaryConflict";

    TypeFusion fused = fuse_types(cluster, store, alignment);
    CHECK(fused.types ==
          std::set<std::string>{"http://dbpedia.org/ontology/MilitaryConflict"});
    CHECK(fused.unaligned == 1);

    // Monotone: adding a member never removes a type.
    RawEntity& yago = store.get_or_create({"yago", "Y"});
    yago.types = {"http://yago.test/war"};
    cluster.members.insert(yago.key);
    TypeFusion bigger = fuse_types(cluster, store, alignment);
    for (const auto& t : fused.types) CHECK(bigger.types.count(t));

    // No aligned types: empty set.
    IdentityCluster lone;
    lone.members = {yago.key};
    CHECK(fuse_types(lone, store, alignment).types.empty());
}

TEST_CASE("text fusion: most-trusted label wins, the rest demote to aliases") {
    SourceRegistry reg = trust();
    EntityStore store;
    RawEntity& wd = store.get_or_create({"wikidata", "Q362"});
    wd.labels["en"] = "World War II";
    RawEntity& yago = store.get_or_create({"yago", "WW_II"});
    yago.labels["en"] = "World War 2";
    yago.labels["de"] = "Zweiter Weltkrieg";
    yago.aliases["en"] = {"WWII"};
    yago.descriptions["en"] = "Global war, 1939 to 1945.";

    IdentityCluster cluster;
    cluster.members = {wd.key, yago.key};

    FusedText fused = fuse_text(cluster, store, {}, reg);
    CHECK(fused.labels["en"] == "World War II");
    CHECK(fused.labels["de"] == "Zweiter Weltkrieg");  // single source
    CHECK(fused.aliases["en"] == std::set<std::string>{"World War 2", "WWII"});
    CHECK(fused.descriptions["en"] == std::set<std::string>{"Global war, 1939 to 1945."});
    CHECK_FALSE(fused.labels.count("fr"));
}

TEST_CASE("relation groups fuse validity across sources") {
    SourceRegistry reg = trust();
    EntityStore store;
    std::vector<std::string> log;
    std::set<EntityKey> ids = {{"wikidata", "P"}, {"yago", "P"}, {"wikidata", "T"}};
    ClusterSet clusters = cluster_same_as(ids, {{{"wikidata", "P"}, {"yago", "P"}}}, {}, IdMap{},
                                          vocab::Schema{"http://kg.test"}, log);

    std::vector<RawRelation> rs;
    RawRelation a;
    a.source = "wikidata";
    a.subject = {"wikidata", "P"};
    a.object = EntityKey{"wikidata", "T"};
    a.predicate = "http://wd.test/P54";
    a.role_type = "http://kg.test/schema/member";
    a.validity = {FlexDate::make_year(2004), FlexDate::make_year(2008)};
    a.category = RelationCategory::temporal;
    rs.push_back(a);
    RawRelation b = a;
    b.source = "yago";
    b.subject = {"yago", "P"};
    b.predicate = "http://yago.test/playsFor";
    b.validity = {FlexDate::make_year(2005), FlexDate::make_year(2008)};
    rs.push_back(b);

    std::size_t dropped = 0;
    auto fused = fuse_relations(rs, clusters, reg, dropped);
    CHECK(dropped == 0);
    REQUIRE(fused.size() == 1);
    CHECK(fused[0].sources == std::set<std::string>{"wikidata", "yago"});
    REQUIRE(fused[0].fused_validity.begin);
    // No plurality on begin (2004 vs 2005): wikidata wins.
    CHECK(fused[0].fused_validity.begin->year() == 2004);
    REQUIRE(fused[0].fused_validity.end);
    CHECK(fused[0].fused_validity.end->year() == 2008);
    CHECK(fused[0].category == RelationCategory::temporal);
    CHECK(fused[0].per_source.count("wikidata"));
    CHECK(fused[0].per_source.count("yago"));
}
