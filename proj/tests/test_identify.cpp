#include <random>

#include "doctest.h"
#include "eventforge/identify.hpp"

using namespace eventforge;

namespace {

using Edges = std::vector<std::pair<std::string, std::string>>;

// Brute-force oracle: reachability from the roots over parent->child edges,
// never entering blacklisted classes.
std::set<std::string> closure_oracle(const Edges& edges, const std::set<std::string>& roots,
                                     const std::set<std::string>& blacklist) {
    std::set<std::string> reach;
    for (const auto& r : roots) {
        if (!blacklist.count(r)) reach.insert(r);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [child, parent] : edges) {
            if (reach.count(parent) && !blacklist.count(child) && !reach.count(child)) {
                reach.insert(child);
                changed = true;
            }
        }
    }
    return reach;
}

EntityKey key(const std::string& id) { return {"wikidata", id}; }

}  // namespace

TEST_CASE("closure of a leaf root is the root itself") {
    CHECK(collect_event_classes({}, {"event"}, {}) == std::set<std::string>{"event"});
    CHECK(collect_event_classes({}, {}, {}).empty());
}

TEST_CASE("blacklisting a class prunes everything reachable only through it") {
    // martial_art < self-defense < protection < activity < act < event
    Edges chain = {
        {"act", "event"},
        {"activity", "act"},
        {"protection", "activity"},
        {"self-defense", "protection"},
        {"martial_art", "self-defense"},
    };
    auto got = collect_event_classes(chain, {"event"}, {"activity"});
    CHECK(got == std::set<std::string>{"event", "act"});

    // A class still reachable around the blacklisted node stays.
    Edges diamond = chain;
    diamond.push_back({"protection", "event"});
    got = collect_event_classes(diamond, {"event"}, {"activity"});
    CHECK(got ==
          std::set<std::string>{"event", "act", "protection", "self-defense", "martial_art"});
}

TEST_CASE("closure is cycle-safe") {
    Edges cyclic = {{"a", "root"}, {"b", "a"}, {"root", "b"}, {"c", "b"}};
    auto got = collect_event_classes(cyclic, {"root"}, {});
    CHECK(got == std::set<std::string>{"root", "a", "b", "c"});
}

TEST_CASE("closure equals the brute-force oracle on random DAGs") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 30)(rng);
        Edges edges;
        // Edges point child -> parent with child index > parent index: a DAG.
        for (int child = 1; child < n; ++child) {
            int fanout = std::uniform_int_distribution<int>(0, 2)(rng);
            for (int k = 0; k < fanout; ++k) {
                int parent = std::uniform_int_distribution<int>(0, child - 1)(rng);
                edges.push_back({"c" + std::to_string(child), "c" + std::to_string(parent)});
            }
        }
        std::set<std::string> roots, blacklist;
        int nroots = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int k = 0; k < nroots; ++k) {
            roots.insert("c" + std::to_string(std::uniform_int_distribution<int>(0, n - 1)(rng)));
        }
        for (int k = 0; k < 2; ++k) {
            blacklist.insert(
                "c" + std::to_string(std::uniform_int_distribution<int>(0, n - 1)(rng)));
        }
        CAPTURE(trial);
        CHECK(collect_event_classes(edges, roots, blacklist) ==
              closure_oracle(edges, roots, blacklist));
    }
}

TEST_CASE("closure equals the oracle on random graphs with cycles") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 50)(rng);
        Edges edges;
        int m = std::uniform_int_distribution<int>(0, 2 * n)(rng);
        for (int k = 0; k < m; ++k) {
            // No ordering constraint: cycles and self-loops welcome.
            edges.push_back(
                {"c" + std::to_string(std::uniform_int_distribution<int>(0, n - 1)(rng)),
                 "c" + std::to_string(std::uniform_int_distribution<int>(0, n - 1)(rng))});
        }
        std::set<std::string> roots, blacklist;
        for (int k = 0, r = std::uniform_int_distribution<int>(1, 3)(rng); k < r; ++k) {
            roots.insert("c" + std::to_string(std::uniform_int_distribution<int>(0, n - 1)(rng)));
        }
        for (int k = 0; k < 2; ++k) {
            blacklist.insert("c" +
                             std::to_string(std::uniform_int_distribution<int>(0, n - 1)(rng)));
        }
        CAPTURE(trial);
        CHECK(collect_event_classes(edges, roots, blacklist) ==
              closure_oracle(edges, roots, blacklist));
    }
}

TEST_CASE("entities typed with an event class become candidates") {
    EntityStore store;
    store.get_or_create(key("battle")).types = {"MilitaryConflict"};
    store.get_or_create(key("person")).types = {"Person"};
    store.get_or_create(key("untyped"));

    KgEventCandidates candidates;
    identify_by_class(store, {"Event", "MilitaryConflict"}, candidates);
    REQUIRE(candidates.size() == 1);
    REQUIRE(candidates.count(key("battle")));
    CHECK(candidates[key("battle")][0].kind == EvidenceKind::class_instance);
    CHECK(candidates[key("battle")][0].detail == "MilitaryConflict");
}

TEST_CASE("category regex identification is language-aware") {
    SourceRegistry reg = SourceRegistry::from_specs(
        {{"dbpedia-en", "", "", 0, "http://dbpedia.test/", "x", {}},
         {"wikidata", "", "", 0, "http://wd.test/", "x", {}}},
        "http://kg.test");

    CategoryRegexTable table;
    table.add("en", ".* events$");

    EntityStore store;
    store.get_or_create({"dbpedia-en", "July_1941"}).categories = {"July 1941 events"};
    store.get_or_create({"dbpedia-en", "Rommel"}).categories = {"German generals"};
    store.get_or_create({"dbpedia-en", "Empty"});
    // Language-less source probes all patterns.
    store.get_or_create({"wikidata", "Q1"}).categories = {"August 1941 events"};

    KgEventCandidates candidates;
    identify_by_category(store, table, reg, candidates);
    CHECK(candidates.size() == 2);
    CHECK(candidates.count({"dbpedia-en", "July_1941"}));
    CHECK(candidates.count({"wikidata", "Q1"}));
}

TEST_CASE("invalid category pattern is a configuration error") {
    CategoryRegexTable table;
    CHECK_THROWS_AS(table.add("en", "([unclosed"), ConfigError);
}

TEST_CASE("sameAs propagation adds transitively connected entities") {
    KgEventCandidates candidates;
    candidates[key("A")].push_back({EvidenceKind::class_instance, "Event"});

    std::vector<std::pair<EntityKey, EntityKey>> links = {
        {key("A"), {"yago", "B"}},
        {{"yago", "B"}, {"dbpedia-en", "C"}},
        {{"dbpedia-en", "X"}, {"yago", "Y"}},  // unrelated component
    };
    propagate_same_as(candidates, links);
    CHECK(candidates.size() == 3);
    CHECK(candidates.count({"yago", "B"}));
    CHECK(candidates.count({"dbpedia-en", "C"}));
    CHECK_FALSE(candidates.count({"dbpedia-en", "X"}));
    CHECK(candidates[{"yago", "B"}][0].kind == EvidenceKind::same_as_propagation);

    // Idempotence.
    KgEventCandidates again = candidates;
    propagate_same_as(again, links);
    CHECK(again == candidates);

    // Isolated candidate stays put.
    KgEventCandidates lone;
    lone[key("Z")].push_back({EvidenceKind::class_instance, "Event"});
    propagate_same_as(lone, {});
    CHECK(lone.size() == 1);
}

TEST_CASE("propagation equals a transitive-closure oracle and is monotone") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 10)(rng);
        std::vector<std::pair<EntityKey, EntityKey>> links;
        int m = std::uniform_int_distribution<int>(0, 15)(rng);
        for (int k = 0; k < m; ++k) {
            int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
            int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
            links.push_back({key("n" + std::to_string(a)), key("n" + std::to_string(b))});
        }
        KgEventCandidates candidates;
        int seeds = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int k = 0; k < seeds; ++k) {
            int s = std::uniform_int_distribution<int>(0, n - 1)(rng);
            candidates[key("n" + std::to_string(s))].push_back(
                {EvidenceKind::class_instance, "Event"});
        }
        KgEventCandidates before = candidates;
        propagate_same_as(candidates, links);

        // Oracle: repeated expansion over the undirected link set.
        std::set<EntityKey> events;
        for (const auto& [k, _] : before) events.insert(k);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [a, b] : links) {
                if (events.count(a) && !events.count(b)) {
                    events.insert(b);
                    changed = true;
                }
                if (events.count(b) && !events.count(a)) {
                    events.insert(a);
                    changed = true;
                }
            }
        }
        std::set<EntityKey> got;
        for (const auto& [k, _] : candidates) got.insert(k);
        CAPTURE(trial);
        CHECK(got == events);

        // Monotone: nothing removed, and every candidate still has evidence.
        for (const auto& [k, ev] : before) {
            REQUIRE(candidates.count(k));
            CHECK(candidates[k] == ev);
        }
        for (const auto& [k, ev] : candidates) CHECK(!ev.empty());
    }
}

TEST_CASE("list records promote to one candidate each with provenance") {
    SourceRegistry reg = SourceRegistry::from_specs(
        {{"wikipedia-en", "", "", 0, "https://en.wikipedia.org/wiki/", "x", {}},
         {"wcep", "", "", 0, "", "x", {}}},
        "http://kg.test");

    std::vector<ListEventRecord> records(3);
    records[0].source = "wikipedia-en";
    records[0].list_page = "1941 in Germany";
    records[0].url = "https://en.wikipedia.org/wiki/1941_in_Germany";
    records[1].source = "wikipedia-en";
    records[1].list_page = "1941 in Germany";
    records[1].url = "https://en.wikipedia.org/wiki/1941_in_Germany";
    records[2].source = "wcep";
    records[2].list_page = "January 2018";
    records[2].url = "";

    auto candidates = promote_list_events(records, reg);
    REQUIRE(candidates.size() == 3);
    CHECK(candidates[0].evidence.kind == EvidenceKind::event_list);
    CHECK(candidates[0].extracted_from == "https://en.wikipedia.org/wiki/1941_in_Germany");
    CHECK(candidates[1].record_index == 1);
    CHECK(candidates[2].evidence.kind == EvidenceKind::current_events);
    CHECK(candidates[2].extracted_from == "January 2018");  // falls back to the page

    CHECK(promote_list_events({}, reg).empty());
}
