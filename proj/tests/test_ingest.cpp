#include <sstream>

#include "doctest.h"
#include "eventforge/ingest.hpp"
#include "eventforge/list_events.hpp"
#include "eventforge/vocab.hpp"

using namespace eventforge;

namespace {

constexpr const char* kBase = "http://kg.test";

SourceRegistry default_registry() {
    std::vector<SourceSpec> specs = {
        {"yago", "", "", 0, "http://yago.test/resource/", "yago.nt", {}},
        {"wikidata", "", "", 0, "http://wd.test/entity/", "wd.nt", {}},
        {"wikipedia-en", "", "", 0, "https://en.wikipedia.org/wiki/", "lists.tsv", {}},
        {"dbpedia-en", "", "", 0, "http://dbpedia.test/resource/", "dbp.nt", {}},
        {"wcep", "", "", 0, "", "wcep.tsv", {}},
    };
    return SourceRegistry::from_specs(std::move(specs), kBase);
}

PropertyMap wikidata_map() {
    PropertyMap map;
    using R = PropertyMap::Role;
    map.add("wikidata", R::label, "http://wd.test/prop/label");
    map.add("wikidata", R::alias, "http://wd.test/prop/alias");
    map.add("wikidata", R::description, "http://wd.test/prop/description");
    map.add("wikidata", R::type, "http://wd.test/prop/P31");
    map.add("wikidata", R::subclass, "http://wd.test/prop/P279");
    map.add("wikidata", R::begin, "http://wd.test/prop/P580");
    map.add("wikidata", R::end, "http://wd.test/prop/P582");
    map.add("wikidata", R::same_as, "http://wd.test/prop/sameAs");
    map.add("wikidata", R::category, "http://wd.test/prop/category");
    map.add("wikidata", R::statement_value, "http://wd.test/prop/statement/value");
    map.add("wikidata", R::validity_begin, "http://wd.test/prop/qualifier/start");
    map.add("wikidata", R::validity_end, "http://wd.test/prop/qualifier/end");
    return map;
}

KgLoadResult load(const std::string& ntriples, EntityStore& store) {
    SourceRegistry reg = default_registry();
    std::istringstream in(ntriples);
    return load_kg_dump(reg.require("wikidata"), in, wikidata_map(), reg, store);
}

}  // namespace

TEST_CASE("source registry derives kinds, languages and the default trust order") {
    SourceRegistry reg = default_registry();
    REQUIRE(reg.size() == 5);
    // wikidata, dbpedia, wikipedia, wcep, yago.
    CHECK(reg.by_trust()[0].name == "wikidata");
    CHECK(reg.by_trust()[1].name == "dbpedia-en");
    CHECK(reg.by_trust()[2].name == "wikipedia-en");
    CHECK(reg.by_trust()[3].name == "wcep");
    CHECK(reg.by_trust()[4].name == "yago");
    for (int i = 0; i < 5; ++i) CHECK(reg.by_trust()[i].trust_rank == i + 1);

    CHECK(reg.require("dbpedia-en").language == "en");
    CHECK(reg.require("dbpedia-en").kind == SourceKind::kg);
    CHECK(reg.require("wikipedia-en").kind == SourceKind::event_list);
    CHECK(reg.require("wcep").kind == SourceKind::current_events);
    CHECK(reg.require("wikidata").language.empty());
    CHECK(reg.require("wikidata").graph_iri.value == "http://kg.test/graph/wikidata");
}

TEST_CASE("single source registers with rank 1") {
    SourceRegistry reg = SourceRegistry::from_specs(
        {{"yago", "", "", 0, "http://yago.test/", "x.nt", {}}}, kBase);
    CHECK(reg.size() == 1);
    CHECK(reg.by_trust()[0].trust_rank == 1);
}

TEST_CASE("duplicate names and duplicate ranks are rejected") {
    CHECK_THROWS_AS(SourceRegistry::from_specs({{"yago", "", "", 0, "", "a", {}},
                                                {"yago", "", "", 0, "", "b", {}}},
                                               kBase),
                    ConfigError);
    CHECK_THROWS_AS(SourceRegistry::from_specs({{"yago", "", "", 1, "", "a", {}},
                                                {"wikidata", "", "", 1, "", "b", {}}},
                                               kBase),
                    ConfigError);
    CHECK_THROWS_AS(SourceRegistry::from_specs({{"notasource", "", "", 0, "", "a", {}}}, kBase),
                    ConfigError);
    CHECK_THROWS_AS(SourceRegistry::from_specs({}, kBase), ConfigError);
}

TEST_CASE("iri resolution picks the longest registered prefix") {
    SourceRegistry reg = default_registry();
    auto k = reg.resolve_iri("http://wd.test/entity/Q362");
    REQUIRE(k);
    CHECK(k->source == "wikidata");
    CHECK(k->local_id == "Q362");
    CHECK_FALSE(reg.resolve_iri("http://elsewhere.test/x"));
    CHECK(reg.entity_iri({"yago", "World_War_II"}) == "http://yago.test/resource/World_War_II");
}

TEST_CASE("config file: key/value pairs, tables, greedy last column") {
    std::istringstream in(
        "base_iri = http://kg.test\n"
        "# comment\n"
        "languages = en de\n"
        "[category-regex]\n"
        "en  .* events$\n"
        "[sources]\n"
        "wikidata  -  -  -  http://wd.test/entity/  dumps/wd.nt\n");
    ConfigFile cfg = ConfigFile::parse(in);
    CHECK(cfg.require("", "base_iri") == "http://kg.test");
    CHECK(cfg.value_or("", "missing", "fallback") == "fallback");
    auto rows = cfg.rows("category-regex", 2);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == "en");
    CHECK(rows[0][1] == ".* events$");
    SourceRegistry reg = SourceRegistry::from_config(cfg, cfg.require("", "base_iri"));
    CHECK(reg.size() == 1);
    CHECK_THROWS_AS(cfg.require("", "nope"), ConfigError);
}

TEST_CASE("label routing, first label wins, extra labels demote to aliases") {
    EntityStore store;
    auto r = load(
        "<http://wd.test/entity/Q1> <http://wd.test/prop/label> \"Battle\"@en .\n"
        "<http://wd.test/entity/Q1> <http://wd.test/prop/label> \"The Battle\"@EN .\n"
        "<http://wd.test/entity/Q1> <http://wd.test/prop/label> \"Schlacht\"@de .\n"
        "<http://wd.test/entity/Q1> <http://wd.test/prop/alias> \"Fight\"@en .\n",
        store);
    CHECK(r.warnings.empty());
    const RawEntity* e = store.find({"wikidata", "Q1"});
    REQUIRE(e);
    CHECK(e->labels.at("en") == "Battle");
    CHECK(e->labels.at("de") == "Schlacht");
    CHECK(e->aliases.at("en") == std::set<std::string>{"Fight", "The Battle"});
}

TEST_CASE("existence timestamps parse at all three granularities") {
    EntityStore store;
    auto r = load(
        "<http://wd.test/entity/Q1> <http://wd.test/prop/P580> "
        "\"1941-02-17\"^^<http://www.w3.org/2001/XMLSchema#date> .\n"
        "<http://wd.test/entity/Q2> <http://wd.test/prop/P580> "
        "\"1941\"^^<http://www.w3.org/2001/XMLSchema#gYear> .\n"
        "<http://wd.test/entity/Q3> <http://wd.test/prop/P582> "
        "\"1941-02\"^^<http://www.w3.org/2001/XMLSchema#gYearMonth> .\n",
        store);
    CHECK(r.warnings.empty());
    auto q1 = store.find({"wikidata", "Q1"})->existence.begin;
    REQUIRE(q1);
    CHECK(*q1 == *FlexDate::make_day(1941, 2, 17));
    auto q2 = store.find({"wikidata", "Q2"})->existence.begin;
    REQUIRE(q2);
    CHECK(q2->granularity() == Granularity::year);
    auto q3 = store.find({"wikidata", "Q3"})->existence.end;
    REQUIRE(q3);
    CHECK(q3->granularity() == Granularity::month);
}

TEST_CASE("unparseable timestamp leaves the field empty and warns") {
    EntityStore store;
    auto r = load(
        "<http://wd.test/entity/Q1> <http://wd.test/prop/P580> \"circa 1941\" .\n", store);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("unparseable timestamp") != std::string::npos);
    CHECK_FALSE(store.find({"wikidata", "Q1"})->existence.begin.has_value());
}

TEST_CASE("reversed existence scope is dropped with a warning") {
    EntityStore store;
    auto r = load(
        "<http://wd.test/entity/Q1> <http://wd.test/prop/P580> "
        "\"2008\"^^<http://www.w3.org/2001/XMLSchema#gYear> .\n"
        "<http://wd.test/entity/Q1> <http://wd.test/prop/P582> "
        "\"2004\"^^<http://www.w3.org/2001/XMLSchema#gYear> .\n",
        store);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("scope dropped") != std::string::npos);
    CHECK_FALSE(store.find({"wikidata", "Q1"})->existence.has_any());
}

TEST_CASE("sameAs routes into cross-source keys; foreign namespaces warn") {
    EntityStore store;
    auto r = load(
        "<http://wd.test/entity/Q362> <http://wd.test/prop/sameAs> "
        "<http://dbpedia.test/resource/World_War_II> .\n"
        "<http://wd.test/entity/Q362> <http://wd.test/prop/sameAs> "
        "<http://unknown.test/WW2> .\n",
        store);
    const RawEntity* e = store.find({"wikidata", "Q362"});
    REQUIRE(e);
    CHECK(e->same_as == std::set<EntityKey>{{"dbpedia-en", "World_War_II"}});
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("sameAs target outside registered namespaces") !=
          std::string::npos);
}

TEST_CASE("unmapped predicates become plain relations; every subject is stored") {
    EntityStore store;
    auto r = load(
        "<http://wd.test/entity/Q1> <http://wd.test/prop/P361> <http://wd.test/entity/Q2> .\n"
        "<http://wd.test/entity/Q2> <http://wd.test/prop/label> \"Two\"@en .\n",
        store);
    REQUIRE(r.relations.size() == 1);
    const RawRelation& rel = r.relations[0];
    CHECK(rel.subject == EntityKey{"wikidata", "Q1"});
    CHECK(rel.object_key() == EntityKey{"wikidata", "Q2"});
    CHECK(rel.category == RelationCategory::plain);
    CHECK_FALSE(rel.validity.has_any());
    CHECK(r.subjects == 2);
    CHECK(store.size() == 2);
}

TEST_CASE("statement nodes resolve to relations with validity and are consumed") {
    EntityStore store;
    auto r = load(
        "<http://wd.test/entity/Q7> <http://wd.test/prop/P54> <http://wd.test/stmt/s1> .\n"
        "<http://wd.test/stmt/s1> <http://wd.test/prop/statement/value> "
        "<http://wd.test/entity/Q8> .\n"
        "<http://wd.test/stmt/s1> <http://wd.test/prop/qualifier/start> "
        "\"2004\"^^<http://www.w3.org/2001/XMLSchema#gYear> .\n"
        "<http://wd.test/stmt/s1> <http://wd.test/prop/qualifier/end> "
        "\"2008\"^^<http://www.w3.org/2001/XMLSchema#gYear> .\n",
        store);
    CHECK(r.warnings.empty());
    REQUIRE(r.relations.size() == 1);
    const RawRelation& rel = r.relations[0];
    CHECK(rel.subject == EntityKey{"wikidata", "Q7"});
    CHECK(rel.object_key() == EntityKey{"wikidata", "Q8"});
    CHECK(rel.predicate == "http://wd.test/prop/P54");
    REQUIRE(rel.validity.begin);
    CHECK(rel.validity.begin->year() == 2004);
    REQUIRE(rel.validity.end);
    CHECK(rel.validity.end->year() == 2008);
    // The statement node itself is not an entity and not a subject; the
    // store holds the relation endpoints.
    CHECK_FALSE(store.contains({"wikidata", "http://wd.test/stmt/s1"}));
    CHECK(r.subjects == 1);
    CHECK(store.size() == 2);
}

TEST_CASE("entity store is order-independent on set-valued fields") {
    std::string lines[] = {
        "<http://wd.test/entity/Q1> <http://wd.test/prop/P31> <http://wd.test/entity/Q100> .\n",
        "<http://wd.test/entity/Q1> <http://wd.test/prop/P31> <http://wd.test/entity/Q200> .\n",
        "<http://wd.test/entity/Q1> <http://wd.test/prop/category> \"July 1941 events\" .\n",
        "<http://wd.test/entity/Q1> <http://wd.test/prop/sameAs> "
        "<http://yago.test/resource/X> .\n",
    };
    EntityStore forward, backward;
    load(lines[0] + lines[1] + lines[2] + lines[3], forward);
    load(lines[3] + lines[2] + lines[1] + lines[0], backward);
    const RawEntity* a = forward.find({"wikidata", "Q1"});
    const RawEntity* b = backward.find({"wikidata", "Q1"});
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->types == b->types);
    CHECK(a->categories == b->categories);
    CHECK(a->same_as == b->same_as);
}

TEST_CASE("event list rows resolve against the page template") {
    SourceRegistry reg = default_registry();
    std::istringstream in(
        "1941 in Germany\ten\tFebruary 12\tErwin Rommel arrives in Tripoli.\t"
        "Erwin_Rommel|Tripoli\thttps://en.wikipedia.org/wiki/1941_in_Germany\n"
        "2007 in philosophy\ten\t\tA quiet year.\t\t"
        "https://en.wikipedia.org/wiki/2007_in_philosophy\n"
        "1941 in Germany\ten\tFebruary 12\t\t\tu\n"       // empty description
        "1941 in Germany\ten\tSmarch 99\tBad date.\t\tu\n"  // unresolvable date
        "List of sovereign states\ten\t\tNot temporal.\t\tu\n");
    auto result = load_event_list_records(reg.require("wikipedia-en"), in);
    REQUIRE(result.records.size() == 2);
    CHECK(result.errors.size() == 3);

    const ListEventRecord& rommel = result.records[0];
    REQUIRE(rommel.date.begin);
    CHECK(*rommel.date.begin == *FlexDate::make_day(1941, 2, 12));
    CHECK(rommel.date.begin == rommel.date.end);
    CHECK(rommel.linked_entities == std::vector<std::string>{"Erwin_Rommel", "Tripoli"});

    const ListEventRecord& phil = result.records[1];
    REQUIRE(phil.date.begin);
    CHECK(phil.date.begin->granularity() == Granularity::year);
    CHECK(phil.date.begin->year() == 2007);
}

TEST_CASE("list title parsing recognizes the four temporal shapes") {
    auto science = parse_list_title("2007 in Science", "en");
    REQUIRE(science);
    CHECK(science->year == 2007);
    CHECK(science->topic == "Science");
    CHECK_FALSE(science->recurring);

    auto aug11 = parse_list_title("August 11", "en");
    REQUIRE(aug11);
    CHECK(aug11->recurring);
    CHECK(aug11->month == 8);
    CHECK(aug11->day == 11);

    auto july41 = parse_list_title("July 1941", "en");
    REQUIRE(july41);
    CHECK(july41->year == 1941);
    CHECK(july41->month == 7);
    CHECK_FALSE(july41->recurring);

    auto year = parse_list_title("1941", "en");
    REQUIRE(year);
    CHECK(year->year == 1941);
    CHECK(year->month == 0);

    CHECK_FALSE(parse_list_title("List of sovereign states", "en"));
    CHECK_FALSE(parse_list_title("", "en"));

    auto de = parse_list_title("11. August", "de");
    REQUIRE(de);
    CHECK(de->recurring);
    CHECK(de->month == 8);
    CHECK(de->day == 11);

    auto fr = parse_list_title("2007 en science", "fr");
    REQUIRE(fr);
    CHECK(fr->year == 2007);

    auto ru = parse_list_title("11 августа", "ru");
    REQUIRE(ru);
    CHECK(ru->recurring);
    CHECK(ru->month == 8);
    CHECK(ru->day == 11);

    auto pt = parse_list_title("2007 em filosofia", "pt");
    REQUIRE(pt);
    CHECK(pt->year == 2007);
    CHECK(pt->topic == "filosofia");
}

TEST_CASE("date texts accept abbreviated and inverted month forms") {
    auto tmpl = parse_list_title("1941 in Germany", "en");
    REQUIRE(tmpl);
    auto abbreviated = resolve_row_date(*tmpl, "Feb 12", "en");
    REQUIRE(abbreviated);
    CHECK(*abbreviated->begin == *FlexDate::make_day(1941, 2, 12));
    CHECK(abbreviated->begin == abbreviated->end);

    auto inverted = resolve_row_date(*tmpl, "12 February", "en");
    REQUIRE(inverted);
    CHECK(*inverted->begin == *FlexDate::make_day(1941, 2, 12));

    auto month_only = resolve_row_date(*tmpl, "February", "en");
    REQUIRE(month_only);
    CHECK(month_only->begin->granularity() == Granularity::month);

    auto ru_tmpl = parse_list_title("1941", "ru");
    REQUIRE(ru_tmpl);
    auto genitive = resolve_row_date(*ru_tmpl, "12 февраля", "ru");
    REQUIRE(genitive);
    CHECK(*genitive->begin == *FlexDate::make_day(1941, 2, 12));
}

TEST_CASE("recurring day pages date rows by the row year") {
    auto tmpl = parse_list_title("August 11", "en");
    REQUIRE(tmpl);
    auto date = resolve_row_date(*tmpl, "1941", "en");
    REQUIRE(date);
    CHECK(*date->begin == *FlexDate::make_day(1941, 8, 11));
    CHECK_FALSE(resolve_row_date(*tmpl, "", "en"));  // year required
}
