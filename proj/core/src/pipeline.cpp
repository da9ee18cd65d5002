#include "eventforge/pipeline.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "eventforge/emit.hpp"
#include "eventforge/fuse.hpp"
#include "eventforge/identify.hpp"
#include "eventforge/ingest.hpp"
#include "eventforge/interlink.hpp"
#include "eventforge/list_match.hpp"
#include "eventforge/ntriples.hpp"
#include "eventforge/stats.hpp"
#include "eventforge/text.hpp"
#include "eventforge/tsv.hpp"
#include "eventforge/vocab.hpp"

namespace eventforge {

namespace fs = std::filesystem;

std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::ingest: return "ingest";
        case Stage::identify: return "identify";
        case Stage::extract: return "extract";
        case Stage::integrate: return "integrate";
        case Stage::fuse: return "fuse";
        case Stage::emit: return "emit";
        case Stage::stats: return "stats";
    }
    return "ingest";
}

std::optional<Stage> stage_from_string(std::string_view s) {
    for (Stage stage : {Stage::ingest, Stage::identify, Stage::extract, Stage::integrate,
                        Stage::fuse, Stage::emit, Stage::stats}) {
        if (to_string(stage) == s) return stage;
    }
    return std::nullopt;
}

namespace {

// ---------------------------------------------------------------------
// Checkpoint file names
// ---------------------------------------------------------------------

constexpr const char* kEntitiesTsv = "entities.tsv";
constexpr const char* kSubclassTsv = "subclass.tsv";
constexpr const char* kRelationsTsv = "relations.tsv";
constexpr const char* kListRecordsTsv = "listrecords.tsv";
constexpr const char* kEventsTsv = "events.tsv";
constexpr const char* kClassesTsv = "classes.tsv";
constexpr const char* kRelationsExtractedTsv = "relations_extracted.tsv";
constexpr const char* kPairsTsv = "pairs.tsv";
constexpr const char* kClustersTsv = "clusters.tsv";
constexpr const char* kIdMapOutTsv = "idmap_out.tsv";
constexpr const char* kReviewLog = "review.log";
constexpr const char* kFusedTsv = "fused.tsv";

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("missing checkpoint or input file: " + path.string() +
                          " (run earlier stages first)");
    }
    return in;
}

void log_line(std::ostream* log, const std::string& stage, const StageCounters& counters) {
    if (!log) return;
    *log << "[" << stage << "]";
    for (const auto& [k, v] : counters.values) *log << " " << k << "=" << v;
    *log << "\n";
}

// ---------------------------------------------------------------------
// Entity store serialization (long rows: source, id, field, k1, value)
// ---------------------------------------------------------------------

void save_store(const EntityStore& store, std::ostream& out) {
    auto row = [&](const EntityKey& key, const std::string& field, const std::string& k1,
                   const std::string& v) {
        out << tsv::format_row({key.source, key.local_id, field, k1, v});
    };
    for (const auto& [key, e] : store) {
        row(key, "node", "", "");
        for (const auto& [lang, v] : e.labels) row(key, "label", lang, v);
        for (const auto& [lang, vs] : e.aliases) {
            for (const auto& v : vs) row(key, "alias", lang, v);
        }
        for (const auto& [lang, v] : e.descriptions) row(key, "description", lang, v);
        if (e.existence.begin) row(key, "begin", "", e.existence.begin->to_lexical());
        if (e.existence.end) row(key, "end", "", e.existence.end->to_lexical());
        for (const auto& t : e.types) row(key, "type", "", t);
        for (const auto& s : e.same_as) row(key, "same-as", s.source, s.local_id);
        for (const auto& c : e.categories) row(key, "category", "", c);
        for (const auto& [lang, vs] : e.out_links) {
            for (const auto& v : vs) row(key, "out-link", lang, v);
        }
    }
}

EntityStore load_store(std::istream& in) {
    EntityStore store;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& f) {
        if (f.size() != 5) {
            throw ConfigError("entities checkpoint line " + std::to_string(line_no) +
                              ": expected 5 columns");
        }
        RawEntity& e = store.get_or_create({f[0], f[1]});
        const std::string& field = f[2];
        if (field == "node") return;
        if (field == "label") e.labels.emplace(f[3], f[4]);
        else if (field == "alias") e.aliases[f[3]].insert(f[4]);
        else if (field == "description") e.descriptions.emplace(f[3], f[4]);
        else if (field == "begin") e.existence.begin = FlexDate::parse(f[4]);
        else if (field == "end") e.existence.end = FlexDate::parse(f[4]);
        else if (field == "type") e.types.insert(f[4]);
        else if (field == "same-as") e.same_as.insert({f[3], f[4]});
        else if (field == "category") e.categories.insert(f[4]);
        else if (field == "out-link") e.out_links[f[3]].insert(f[4]);
        else throw ConfigError("entities checkpoint: unknown field '" + field + "'");
    });
    return store;
}

// ---------------------------------------------------------------------
// Relation serialization
// ---------------------------------------------------------------------

void save_relations(const std::vector<RawRelation>& relations, std::ostream& out) {
    for (const RawRelation& r : relations) {
        std::string obj_kind, obj_a, obj_b;
        if (r.object_is_entity()) {
            obj_kind = "e";
            obj_a = r.object_key().source;
            obj_b = r.object_key().local_id;
        } else {
            obj_kind = "l";
            rdf::write_term(obj_a, std::get<rdf::Literal>(r.object));
        }
        out << tsv::format_row(
            {r.source, r.subject.source, r.subject.local_id, r.predicate, obj_kind, obj_a,
             obj_b, r.role_type, std::string(to_string(r.category)),
             r.validity.begin ? r.validity.begin->to_lexical() : "",
             r.validity.end ? r.validity.end->to_lexical() : ""});
    }
}

std::vector<RawRelation> load_relations(std::istream& in) {
    std::vector<RawRelation> out;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& f) {
        if (f.size() != 11) {
            throw ConfigError("relations checkpoint line " + std::to_string(line_no) +
                              ": expected 11 columns");
        }
        RawRelation r;
        r.source = f[0];
        r.subject = {f[1], f[2]};
        r.predicate = f[3];
        if (f[4] == "e") {
            r.object = EntityKey{f[5], f[6]};
        } else {
            auto term = rdf::parse_term(f[5]);
            if (!term || !rdf::is_literal(*term)) {
                throw ConfigError("relations checkpoint line " + std::to_string(line_no) +
                                  ": bad literal object");
            }
            r.object = rdf::as_literal(*term);
        }
        r.role_type = f[7];
        auto cat = relation_category_from_string(f[8]);
        if (!cat) {
            throw ConfigError("relations checkpoint line " + std::to_string(line_no) +
                              ": bad category '" + f[8] + "'");
        }
        r.category = *cat;
        if (!f[9].empty()) r.validity.begin = FlexDate::parse(f[9]);
        if (!f[10].empty()) r.validity.end = FlexDate::parse(f[10]);
        out.push_back(std::move(r));
    });
    return out;
}

// ---------------------------------------------------------------------
// List records, events, clusters, fused views
// ---------------------------------------------------------------------

void save_records(const std::vector<ListEventRecord>& records, std::ostream& out) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ListEventRecord& r = records[i];
        std::string linked;
        for (std::size_t k = 0; k < r.linked_entities.size(); ++k) {
            if (k) linked += '|';
            linked += r.linked_entities[k];
        }
        out << tsv::format_row({std::to_string(i), r.source, r.list_page, r.language,
                                r.date.begin ? r.date.begin->to_lexical() : "",
                                r.date.end ? r.date.end->to_lexical() : "", r.description,
                                linked, r.url});
    }
}

std::vector<ListEventRecord> load_records(std::istream& in) {
    std::vector<ListEventRecord> out;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& f) {
        if (f.size() != 9) {
            throw ConfigError("list records checkpoint line " + std::to_string(line_no) +
                              ": expected 9 columns");
        }
        ListEventRecord r;
        r.source = f[1];
        r.list_page = f[2];
        r.language = f[3];
        if (!f[4].empty()) r.date.begin = FlexDate::parse(f[4]);
        if (!f[5].empty()) r.date.end = FlexDate::parse(f[5]);
        r.description = f[6];
        for (auto& l : text::split(f[7], '|')) {
            if (!l.empty()) r.linked_entities.push_back(std::move(l));
        }
        r.url = f[8];
        out.push_back(std::move(r));
    });
    return out;
}

struct EventCheckpoint {
    KgEventCandidates kg;
    std::vector<ListEventCandidate> list;
};

void save_events(const EventCheckpoint& ev, std::ostream& out) {
    for (const auto& [key, evidence] : ev.kg) {
        for (const EventEvidence& e : evidence) {
            out << tsv::format_row({"kg", key.source, key.local_id,
                                    std::string(to_string(e.kind)), e.detail});
        }
    }
    for (const ListEventCandidate& c : ev.list) {
        out << tsv::format_row({"list", std::to_string(c.record_index), c.extracted_from,
                                std::string(to_string(c.evidence.kind)), c.evidence.detail});
    }
}

EventCheckpoint load_events(std::istream& in) {
    EventCheckpoint ev;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& f) {
        if (f.size() != 5) {
            throw ConfigError("events checkpoint line " + std::to_string(line_no) +
                              ": expected 5 columns");
        }
        auto kind = evidence_kind_from_string(f[3]);
        if (!kind) {
            throw ConfigError("events checkpoint line " + std::to_string(line_no) +
                              ": bad evidence kind '" + f[3] + "'");
        }
        if (f[0] == "kg") {
            ev.kg[{f[1], f[2]}].push_back({*kind, f[4]});
        } else {
            ListEventCandidate c;
            c.record_index = std::stoull(f[1]);
            c.extracted_from = f[2];
            c.evidence = {*kind, f[4]};
            ev.list.push_back(std::move(c));
        }
    });
    return ev;
}

void save_clusters(const ClusterSet& clusters, std::ostream& out) {
    for (const IdentityCluster& c : clusters.clusters) {
        out << tsv::format_row(
            {c.canonical_iri, "is-event", c.is_event ? "1" : "0", ""});
        for (const EntityKey& m : c.members) {
            bool list = c.list_members.count(m) > 0;
            out << tsv::format_row(
                {c.canonical_iri, list ? "list-member" : "member", m.source, m.local_id});
        }
        for (const std::string& url : c.extracted_from) {
            out << tsv::format_row({c.canonical_iri, "extracted-from", url, ""});
        }
        for (std::size_t row : c.list_record_rows) {
            out << tsv::format_row({c.canonical_iri, "list-row", std::to_string(row), ""});
        }
    }
}

ClusterSet load_clusters(std::istream& in) {
    ClusterSet cs;
    std::map<std::string, std::size_t> index;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& f) {
        if (f.size() != 4) {
            throw ConfigError("clusters checkpoint line " + std::to_string(line_no) +
                              ": expected 4 columns");
        }
        auto it = index.find(f[0]);
        if (it == index.end()) {
            it = index.emplace(f[0], cs.clusters.size()).first;
            cs.clusters.emplace_back();
            cs.clusters.back().canonical_iri = f[0];
        }
        IdentityCluster& c = cs.clusters[it->second];
        const std::string& field = f[1];
        if (field == "is-event") {
            c.is_event = f[2] == "1";
        } else if (field == "member") {
            c.members.insert({f[2], f[3]});
        } else if (field == "list-member") {
            c.members.insert({f[2], f[3]});
            c.list_members.insert({f[2], f[3]});
        } else if (field == "extracted-from") {
            c.extracted_from.insert(f[2]);
        } else if (field == "list-row") {
            c.list_record_rows.push_back(std::stoull(f[2]));
        } else {
            throw ConfigError("clusters checkpoint: unknown field '" + field + "'");
        }
    });
    cs.rebuild_index();
    return cs;
}

void save_views(const std::map<std::string, FusedView>& views, std::ostream& out) {
    auto row = [&](const std::string& iri, const std::string& field, const std::string& k1,
                   const std::string& v) {
        out << tsv::format_row({iri, field, k1, v});
    };
    for (const auto& [iri, view] : views) {
        row(iri, "view", "", "");
        if (view.scope.begin) row(iri, "begin", "", view.scope.begin->to_lexical());
        if (view.scope.end) row(iri, "end", "", view.scope.end->to_lexical());
        for (const auto& l : view.locations) row(iri, "location", "", l);
        for (const auto& t : view.types.types) row(iri, "type", "", t);
        if (view.types.unaligned) {
            row(iri, "unaligned-types", "", std::to_string(view.types.unaligned));
        }
        for (const auto& [lang, v] : view.text.labels) row(iri, "label", lang, v);
        for (const auto& [lang, vs] : view.text.aliases) {
            for (const auto& v : vs) row(iri, "alias", lang, v);
        }
        for (const auto& [lang, vs] : view.text.descriptions) {
            for (const auto& v : vs) row(iri, "description", lang, v);
        }
    }
}

std::map<std::string, FusedView> load_views(std::istream& in) {
    std::map<std::string, FusedView> views;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& f) {
        if (f.size() != 4) {
            throw ConfigError("fused checkpoint line " + std::to_string(line_no) +
                              ": expected 4 columns");
        }
        FusedView& v = views[f[0]];
        const std::string& field = f[1];
        if (field == "view") return;
        if (field == "begin") v.scope.begin = FlexDate::parse(f[3]);
        else if (field == "end") v.scope.end = FlexDate::parse(f[3]);
        else if (field == "location") v.locations.insert(f[3]);
        else if (field == "type") v.types.types.insert(f[3]);
        else if (field == "unaligned-types") v.types.unaligned = std::stoull(f[3]);
        else if (field == "label") v.text.labels.emplace(f[2], f[3]);
        else if (field == "alias") v.text.aliases[f[2]].insert(f[3]);
        else if (field == "description") v.text.descriptions[f[2]].insert(f[3]);
        else throw ConfigError("fused checkpoint: unknown field '" + field + "'");
    });
    return views;
}

void save_pairs(const PairCounts& links, const PairCounts& mentions, std::ostream& out) {
    for (const auto& [pair, by_lang] : links) {
        for (const auto& [lang, n] : by_lang) {
            out << tsv::format_row({"links", lang, pair.first, pair.second,
                                    std::to_string(n)});
        }
    }
    for (const auto& [pair, by_lang] : mentions) {
        for (const auto& [lang, n] : by_lang) {
            out << tsv::format_row({"mentions", lang, pair.first, pair.second,
                                    std::to_string(n)});
        }
    }
}

void load_pairs(std::istream& in, PairCounts& links, PairCounts& mentions) {
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& f) {
        if (f.size() != 5) {
            throw ConfigError("pairs checkpoint line " + std::to_string(line_no) +
                              ": expected 5 columns");
        }
        PairCounts& target = f[0] == "links" ? links : mentions;
        target[{f[2], f[3]}][f[1]] += std::stoll(f[4]);
    });
}

std::set<std::string> load_blacklist(const fs::path& path) {
    std::set<std::string> out;
    if (path.empty()) return out;
    auto in = open_in(path);
    std::string line;
    while (std::getline(in, line)) {
        auto t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;
        out.insert(std::string(t));
    }
    return out;
}

// ---------------------------------------------------------------------
// Stage implementations
// ---------------------------------------------------------------------

struct Paths {
    fs::path workdir;
    fs::path in(const char* name) const { return workdir / name; }
};

void stage_ingest(const PipelineConfig& cfg, PipelineReport& report, std::ostream* log) {
    StageCounters counters;
    const std::set<std::string> languages = cfg.language_set();
    EntityStore store;
    std::vector<RawRelation> relations;
    // (source name, child class, parent class)
    std::vector<std::array<std::string, 3>> subclass_edges;
    std::vector<ListEventRecord> records;

    PropertyMap property_map = PropertyMap::from_config(cfg.raw);

    for (const DatasetDescriptor& d : cfg.registry.by_trust()) {
        if (d.kind == SourceKind::kg) {
            auto in = open_in(d.path);
            KgLoadResult r = load_kg_dump(d, in, property_map, cfg.registry, store);
            counters.bump("triples", r.triples);
            counters.bump("parse_errors", r.parse_errors);
            counters.bump("relations", r.relations.size());
            for (auto& w : r.warnings) report.warnings.push_back(w);
            for (auto& rel : r.relations) relations.push_back(std::move(rel));
            for (auto& e : r.subclass_edges) {
                subclass_edges.push_back({d.name, std::move(e.first), std::move(e.second)});
            }
        } else {
            auto in = open_in(d.path);
            ListLoadResult r = load_event_list_records(d, in);
            counters.bump("list_rows", r.rows);
            counters.bump("list_records", r.records.size());
            for (auto& e : r.errors) report.warnings.push_back(e);
            for (auto& rec : r.records) {
                if (!languages.count(rec.language)) {
                    report.warnings.push_back("[" + d.name + "] record on page '" +
                                              rec.list_page + "' has unconfigured language " +
                                              rec.language + "; skipped");
                    counters.bump("records_outside_languages");
                    continue;
                }
                records.push_back(std::move(rec));
            }
        }
    }

    if (!cfg.link_graph.empty()) {
        auto in = open_in(cfg.link_graph);
        LinkGraph graph = load_link_graph(in);
        counters.bump("link_edges_outside_languages", restrict_languages(graph, languages));
        attach_out_links(store, graph, cfg.registry);
        counters.bump("link_edges", graph.edge_count());
    }

    counters.bump("entities", store.size());
    counters.bump("records", records.size());

    {
        auto out = open_out(Paths{cfg.workdir}.in(kEntitiesTsv));
        save_store(store, out);
    }
    {
        auto out = open_out(Paths{cfg.workdir}.in(kSubclassTsv));
        for (const auto& [source, child, parent] : subclass_edges) {
            out << tsv::format_row({source, child, parent});
        }
    }
    {
        auto out = open_out(Paths{cfg.workdir}.in(kRelationsTsv));
        save_relations(relations, out);
    }
    {
        auto out = open_out(Paths{cfg.workdir}.in(kListRecordsTsv));
        save_records(records, out);
    }

    report.per_stage["ingest"] = counters;
    log_line(log, "ingest", counters);
}

void stage_identify(const PipelineConfig& cfg, PipelineReport& report, std::ostream* log) {
    StageCounters counters;
    Paths paths{cfg.workdir};

    auto store_in = open_in(paths.in(kEntitiesTsv));
    EntityStore store = load_store(store_in);
    auto records_in = open_in(paths.in(kListRecordsTsv));
    std::vector<ListEventRecord> records = load_records(records_in);

    // Subclass edges per source.
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> subclass;
    {
        auto in = open_in(paths.in(kSubclassTsv));
        tsv::for_each_row(in, [&](std::size_t, std::vector<std::string>&& f) {
            if (f.size() == 3) subclass[f[0]].push_back({f[1], f[2]});
        });
    }

    std::set<std::string> blacklist = load_blacklist(cfg.blacklist);

    // Event classes per source; class IRIs are namespaced, so the union is
    // safe to match against every source's types.
    std::map<std::string, std::set<std::string>> roots;
    for (auto& row : cfg.raw.rows("event-classes", 2)) {
        roots[row[0]].insert(row[1]);
    }
    std::set<std::string> event_classes;
    {
        auto out = open_out(paths.in(kClassesTsv));
        for (const auto& [source, source_roots] : roots) {
            auto classes = collect_event_classes(subclass[source], source_roots, blacklist);
            for (const auto& c : classes) {
                out << tsv::format_row({source, c});
                event_classes.insert(c);
            }
        }
    }
    counters.bump("event_classes", event_classes.size());

    EventCheckpoint ev;
    identify_by_class(store, event_classes, ev.kg);
    counters.bump("by_class", ev.kg.size());

    CategoryRegexTable regexes = CategoryRegexTable::from_config(cfg.raw);
    identify_by_category(store, regexes, cfg.registry, ev.kg);
    counters.bump("with_category", ev.kg.size());

    propagate_same_as(ev.kg, collect_same_as_links(store));
    counters.bump("after_propagation", ev.kg.size());

    ev.list = promote_list_events(records, cfg.registry);
    counters.bump("list_candidates", ev.list.size());

    auto out = open_out(paths.in(kEventsTsv));
    save_events(ev, out);

    report.per_stage["identify"] = counters;
    log_line(log, "identify", counters);
}

void stage_extract(const PipelineConfig& cfg, PipelineReport& report, std::ostream* log) {
    StageCounters counters;
    Paths paths{cfg.workdir};

    auto store_in = open_in(paths.in(kEntitiesTsv));
    EntityStore store = load_store(store_in);
    auto rel_in = open_in(paths.in(kRelationsTsv));
    std::vector<RawRelation> relations = load_relations(rel_in);
    auto ev_in = open_in(paths.in(kEventsTsv));
    EventCheckpoint ev = load_events(ev_in);

    EventSet events;
    for (const auto& [key, _] : ev.kg) events.insert(key);

    ExtractionLog xlog;
    extract_temporal_relations(relations, xlog);
    if (!cfg.mapping_table.empty()) {
        auto in = open_in(cfg.mapping_table);
        auto mapping = load_mapping_table(in);
        map_structural(relations, mapping, events, vocab::Schema{cfg.base_iri}, xlog);
    }
    extract_indirect_relations(relations, store, events);
    for (auto& w : xlog.warnings) report.warnings.push_back(w);

    for (const RawRelation& r : relations) {
        counters.bump(std::string(to_string(r.category)));
    }

    {
        auto out = open_out(paths.in(kRelationsExtractedTsv));
        save_relations(relations, out);
    }

    // Interlink statistics in the raw (language-local) id space. An id is
    // event-backed when any same-language source flags it.
    PairCounts links, mentions;
    auto raw_is_event = [&](const std::string& language, const std::string& id) {
        for (const DatasetDescriptor* d : cfg.registry.with_language(language)) {
            if (events.count({d->name, id})) return true;
        }
        return false;
    };
    const std::set<std::string> languages = cfg.language_set();
    if (!cfg.link_graph.empty()) {
        auto in = open_in(cfg.link_graph);
        LinkGraph graph = load_link_graph(in);
        restrict_languages(graph, languages);
        std::set<std::string> raw_events;
        for (const auto& [language, per_from] : graph.edges) {
            for (const auto& [from, tos] : per_from) {
                if (raw_is_event(language, from)) raw_events.insert(from);
                for (const auto& to : tos) {
                    if (raw_is_event(language, to)) raw_events.insert(to);
                }
            }
        }
        links = compute_links(graph, raw_events);
        counters.bump("link_pairs", links.size());
    }
    if (!cfg.sentence_corpus.empty()) {
        auto in = open_in(cfg.sentence_corpus);
        auto corpus = load_sentence_corpus(in);
        restrict_languages(corpus, languages);
        std::set<std::string> raw_events;
        for (const Sentence& s : corpus) {
            for (const std::string& id : s.entities) {
                if (raw_is_event(s.language, id)) raw_events.insert(id);
            }
        }
        mentions = compute_mentions(corpus, raw_events);
        counters.bump("mention_pairs", mentions.size());
    }
    {
        auto out = open_out(paths.in(kPairsTsv));
        save_pairs(links, mentions, out);
    }

    report.per_stage["extract"] = counters;
    log_line(log, "extract", counters);
}

void stage_integrate(const PipelineConfig& cfg, PipelineReport& report, std::ostream* log) {
    StageCounters counters;
    Paths paths{cfg.workdir};

    auto store_in = open_in(paths.in(kEntitiesTsv));
    EntityStore store = load_store(store_in);
    auto records_in = open_in(paths.in(kListRecordsTsv));
    std::vector<ListEventRecord> records = load_records(records_in);
    auto ev_in = open_in(paths.in(kEventsTsv));
    EventCheckpoint ev = load_events(ev_in);

    EventSet events;
    for (const auto& [key, _] : ev.kg) events.insert(key);

    IdMap persisted;
    if (!cfg.id_map.empty() && fs::exists(cfg.id_map)) {
        auto in = open_in(cfg.id_map);
        persisted = IdMap::load(in);
    }

    MatchConfig match_cfg;
    match_cfg.jaccard_threshold = cfg.match_jaccard;
    IntegrationResult result =
        integrate_sources(store, events, records, ev.list, persisted,
                          vocab::Schema{cfg.base_iri}, match_cfg);

    counters.bump("clusters", result.clusters.clusters.size());
    std::size_t event_clusters = 0, matched = 0;
    for (const auto& c : result.clusters.clusters) {
        if (c.is_event) ++event_clusters;
    }
    for (const auto& [row, idx] : result.record_cluster) {
        if (result.clusters.clusters[idx].kg_backed()) ++matched;
    }
    counters.bump("event_clusters", event_clusters);
    counters.bump("records_matched_to_kg", matched);
    counters.bump("review_entries", result.review_log.size());

    {
        auto out = open_out(paths.in(kClustersTsv));
        save_clusters(result.clusters, out);
    }
    {
        IdMap updated;
        for (const IdentityCluster& c : result.clusters.clusters) {
            for (const EntityKey& m : c.members) {
                if (!c.list_members.count(m)) updated.put(to_string(m), c.canonical_iri);
            }
        }
        auto out = open_out(paths.in(kIdMapOutTsv));
        updated.save(out);
    }
    {
        auto out = open_out(paths.in(kReviewLog));
        for (const auto& line : result.review_log) out << line << "\n";
    }

    report.per_stage["integrate"] = counters;
    log_line(log, "integrate", counters);
}

// Cluster-level location inputs: hasPlace objects per subject cluster and
// the containedInPlace hierarchy.
struct LocationModel {
    std::map<std::string, std::set<std::string>> member_locations;  // cluster iri -> places
    PlaceHierarchy hierarchy;
    std::set<std::string> place_clusters;
};

LocationModel build_location_model(const std::vector<RawRelation>& relations,
                                   const ClusterSet& clusters,
                                   std::vector<std::string>& warnings) {
    LocationModel model;
    PlaceHierarchy raw;
    for (const RawRelation& r : relations) {
        if (!r.object_is_entity()) continue;
        const IdentityCluster* s = clusters.find(r.subject);
        const IdentityCluster* o = clusters.find(r.object_key());
        if (!s || !o) continue;
        if (r.role_type == vocab::kSemHasPlace) {
            model.member_locations[s->canonical_iri].insert(o->canonical_iri);
            model.place_clusters.insert(o->canonical_iri);
        } else if (r.role_type == vocab::kSoContainedInPlace) {
            raw.add(s->canonical_iri, o->canonical_iri);
            model.place_clusters.insert(s->canonical_iri);
            model.place_clusters.insert(o->canonical_iri);
        }
    }
    model.hierarchy = PlaceHierarchy::acyclic(raw, warnings);
    return model;
}

void stage_fuse(const PipelineConfig& cfg, PipelineReport& report, std::ostream* log) {
    StageCounters counters;
    Paths paths{cfg.workdir};

    auto store_in = open_in(paths.in(kEntitiesTsv));
    EntityStore store = load_store(store_in);
    auto records_in = open_in(paths.in(kListRecordsTsv));
    std::vector<ListEventRecord> records = load_records(records_in);
    auto clusters_in = open_in(paths.in(kClustersTsv));
    ClusterSet clusters = load_clusters(clusters_in);
    auto rel_in = open_in(paths.in(kRelationsExtractedTsv));
    std::vector<RawRelation> relations = load_relations(rel_in);

    TypeAlignment alignment;
    if (!cfg.type_alignment.empty()) {
        auto in = open_in(cfg.type_alignment);
        alignment = TypeAlignment::load(in);
    }

    LocationModel locations = build_location_model(relations, clusters, report.warnings);

    std::map<std::string, FusedView> views;
    for (const IdentityCluster& cluster : clusters.clusters) {
        static const std::set<std::string> no_locations;
        auto it = locations.member_locations.find(cluster.canonical_iri);
        const std::set<std::string>& member_locations =
            it == locations.member_locations.end() ? no_locations : it->second;
        views.emplace(cluster.canonical_iri,
                      fuse_cluster(cluster, store, records, member_locations,
                                   locations.hierarchy, alignment, cfg.registry));
    }
    counters.bump("views", views.size());
    std::size_t dated = 0;
    for (const auto& [_, v] : views) {
        if (v.scope.has_any()) ++dated;
    }
    counters.bump("with_time", dated);

    auto out = open_out(paths.in(kFusedTsv));
    save_views(views, out);

    report.per_stage["fuse"] = counters;
    log_line(log, "fuse", counters);
}

void stage_emit(const PipelineConfig& cfg, PipelineReport& report, std::ostream* log) {
    StageCounters counters;
    Paths paths{cfg.workdir};

    auto store_in = open_in(paths.in(kEntitiesTsv));
    EntityStore store = load_store(store_in);
    auto records_in = open_in(paths.in(kListRecordsTsv));
    std::vector<ListEventRecord> records = load_records(records_in);
    auto clusters_in = open_in(paths.in(kClustersTsv));
    ClusterSet clusters = load_clusters(clusters_in);
    auto rel_in = open_in(paths.in(kRelationsExtractedTsv));
    std::vector<RawRelation> relations = load_relations(rel_in);
    auto views_in = open_in(paths.in(kFusedTsv));
    std::map<std::string, FusedView> views = load_views(views_in);

    // Extracted relations only: plain ones stay out of the output.
    std::vector<RawRelation> extracted;
    for (auto& r : relations) {
        if (r.category != RelationCategory::plain) extracted.push_back(std::move(r));
    }
    std::size_t dropped = 0;
    std::vector<FusedRelation> fused_relations =
        fuse_relations(extracted, clusters, cfg.registry, dropped);
    counters.bump("fused_relations", fused_relations.size());
    counters.bump("dropped_relations", dropped);

    std::vector<std::string> location_warnings;
    LocationModel locations = build_location_model(relations, clusters, location_warnings);

    // Raw interlink pairs resolve into canonical cluster IRIs.
    PairCounts raw_links, raw_mentions;
    {
        auto in = open_in(paths.in(kPairsTsv));
        load_pairs(in, raw_links, raw_mentions);
    }
    auto resolve = [&](const std::string& language,
                       const std::string& id) -> std::optional<std::string> {
        for (const DatasetDescriptor* d : cfg.registry.with_language(language)) {
            if (auto idx = clusters.index_of({d->name, id})) {
                return clusters.clusters[*idx].canonical_iri;
            }
        }
        return std::nullopt;
    };
    PairCounts links, mentions;
    for (const auto& [pair, by_lang] : raw_links) {
        for (const auto& [lang, n] : by_lang) {
            auto a = resolve(lang, pair.first), b = resolve(lang, pair.second);
            if (!a || !b || *a == *b) continue;
            links[{*a, *b}][lang] += n;
        }
    }
    for (const auto& [pair, by_lang] : raw_mentions) {
        for (const auto& [lang, n] : by_lang) {
            auto a = resolve(lang, pair.first), b = resolve(lang, pair.second);
            if (!a || !b || *a == *b) continue;
            auto key = std::minmax(*a, *b);
            mentions[{key.first, key.second}][lang] += n;
        }
    }
    counters.bump("link_pairs", links.size());
    counters.bump("mention_pairs", mentions.size());

    EmitModel model{cfg.registry, store,  records,  clusters,
                    views,        fused_relations, links, mentions,
                    locations.place_clusters, cfg.dataset_date};
    GraphLayout layout = GraphLayout::build(cfg.registry, vocab::Schema{cfg.base_iri});
    EmitResult result = emit_dataset(model, layout);
    counters.bump("quads", result.quads.size());
    counters.bump("relation_nodes", result.relation_nodes);
    counters.bump("skipped_entity_clusters", result.skipped_entity_clusters);

    if (cfg.output.has_parent_path()) fs::create_directories(cfg.output.parent_path());
    auto out = open_out(cfg.output);
    rdf::write_nquads(out, result.quads);

    report.per_stage["emit"] = counters;
    log_line(log, "emit", counters);
}

void stage_stats(const PipelineConfig& cfg, PipelineReport& report, std::ostream* log) {
    StageCounters counters;

    auto in = open_in(cfg.output);
    GraphLayout layout = GraphLayout::build(cfg.registry, vocab::Schema{cfg.base_iri});
    rdf::QuadDocument doc = rdf::read_nquads(in, layout.fused_graph);
    counters.bump("quads", doc.quads.size());
    counters.bump("parse_errors", doc.errors.size());

    StatsReport stats = compute_stats(doc.quads, layout);
    auto text_out = open_out(cfg.workdir / "stats.txt");
    text_out << stats.to_text();
    auto tsv_out = open_out(cfg.workdir / "stats.tsv");
    tsv_out << stats.to_tsv();

    if (stats.per_graph.count("event_kg")) {
        counters.bump("events", stats.per_graph.at("event_kg").events);
        counters.bump("relations", stats.per_graph.at("event_kg").relations);
    }

    report.per_stage["stats"] = counters;
    log_line(log, "stats", counters);
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& config_path,
                                    const std::map<std::string, std::string>& source_overrides) {
    ConfigFile cfg = ConfigFile::load(config_path);
    PipelineConfig out;
    out.base_iri = cfg.value_or("", "base_iri", vocab::kDefaultBaseIri);
    if (const char* env = std::getenv("EVENTFORGE_BASE_IRI"); env && *env) {
        out.base_iri = env;
    }
    if (!rdf::is_valid_iri(out.base_iri)) throw ConfigError("base_iri is not a valid IRI");
    while (!out.base_iri.empty() && out.base_iri.back() == '/') out.base_iri.pop_back();

    for (auto& lang : text::split_ws(cfg.value_or("", "languages", ""))) {
        out.languages.push_back(lang);
    }
    if (out.languages.empty()) throw ConfigError("languages must name at least one language");

    // Input paths are config-relative (a fixture bundle stays portable);
    // output and workdir are cwd-relative (artifacts land where you run).
    fs::path base_dir = config_path.has_parent_path() ? config_path.parent_path() : fs::path(".");
    auto resolve_path = [&](const std::string& value) -> fs::path {
        if (value.empty()) return {};
        fs::path p(value);
        return p.is_absolute() ? p : base_dir / p;
    };

    out.output = cfg.require("", "output");
    out.workdir = cfg.value_or("", "workdir", "work");
    {
        std::string raw_threshold = cfg.value_or("", "match_jaccard", "0.5");
        try {
            std::size_t used = 0;
            out.match_jaccard = std::stod(raw_threshold, &used);
            if (used != raw_threshold.size()) throw std::invalid_argument(raw_threshold);
        } catch (const std::exception&) {
            throw ConfigError("bad match_jaccard value '" + raw_threshold + "'");
        }
        if (out.match_jaccard < 0.0 || out.match_jaccard > 1.0) {
            throw ConfigError("match_jaccard must lie in [0, 1]");
        }
    }
    if (auto date = cfg.value("", "dataset_date")) {
        auto d = FlexDate::parse(*date);
        if (!d) throw ConfigError("bad dataset_date '" + *date + "'");
        out.dataset_date = d;
    }

    out.registry = SourceRegistry::from_config(cfg, out.base_iri);
    // Source dump paths are config-relative; CLI overrides are cwd-relative.
    {
        std::vector<SourceSpec> specs;
        for (const DatasetDescriptor& d : out.registry.by_trust()) {
            SourceSpec s;
            s.name = d.name;
            s.kind = std::string(to_string(d.kind));
            s.language = d.language.empty() ? "-" : d.language;
            s.trust_rank = d.trust_rank;
            s.iri_prefix = d.iri_prefix;
            auto ov = source_overrides.find(d.name);
            s.path = ov != source_overrides.end() ? ov->second
                                                  : resolve_path(d.path).string();
            s.creation_date = d.creation_date;
            specs.push_back(std::move(s));
        }
        out.registry = SourceRegistry::from_specs(std::move(specs), out.base_iri);
    }
    for (const auto& [name, _] : source_overrides) {
        out.registry.require(name);  // throws for unknown names
    }

    out.mapping_table = resolve_path(cfg.value_or("paths", "mapping_table", ""));
    out.type_alignment = resolve_path(cfg.value_or("paths", "type_alignment", ""));
    out.link_graph = resolve_path(cfg.value_or("paths", "link_graph", ""));
    out.sentence_corpus = resolve_path(cfg.value_or("paths", "sentence_corpus", ""));
    out.blacklist = resolve_path(cfg.value_or("paths", "blacklist", ""));
    out.id_map = resolve_path(cfg.value_or("paths", "id_map", ""));
    out.raw = cfg;
    return out;
}

void PipelineConfig::validate() const {
    const std::set<std::string> langs = language_set();
    for (const DatasetDescriptor& d : registry.by_trust()) {
        if (!fs::exists(d.path)) {
            throw ConfigError("source '" + d.name + "': input file does not exist: " + d.path);
        }
        if (!d.language.empty() && !langs.count(d.language)) {
            throw ConfigError("source '" + d.name + "' has language '" + d.language +
                              "' outside the configured set");
        }
    }
    for (const fs::path* p : {&mapping_table, &type_alignment, &link_graph, &sentence_corpus,
                              &blacklist}) {
        if (!p->empty() && !fs::exists(*p)) {
            throw ConfigError("configured file does not exist: " + p->string());
        }
    }
    // Table syntax checks; all throw ConfigError on bad content.
    PropertyMap::from_config(raw);
    CategoryRegexTable::from_config(raw);
    if (!mapping_table.empty()) {
        std::ifstream in(mapping_table);
        load_mapping_table(in);
    }
    if (!type_alignment.empty()) {
        std::ifstream in(type_alignment);
        TypeAlignment::load(in);
    }
    for (auto& row : raw.rows("event-classes", 2)) {
        registry.require(row[0]);
    }
}

PipelineReport run_pipeline(const PipelineConfig& config, Stage from, std::ostream* log) {
    config.validate();
    fs::create_directories(config.workdir);
    PipelineReport report;
    for (Stage stage : {Stage::ingest, Stage::identify, Stage::extract, Stage::integrate,
                        Stage::fuse, Stage::emit, Stage::stats}) {
        if (static_cast<int>(stage) < static_cast<int>(from)) continue;
        run_stage(config, stage, report, log);
    }
    return report;
}

void run_stage(const PipelineConfig& config, Stage stage, PipelineReport& report,
               std::ostream* log) {
    fs::create_directories(config.workdir);
    switch (stage) {
        case Stage::ingest: stage_ingest(config, report, log); break;
        case Stage::identify: stage_identify(config, report, log); break;
        case Stage::extract: stage_extract(config, report, log); break;
        case Stage::integrate: stage_integrate(config, report, log); break;
        case Stage::fuse: stage_fuse(config, report, log); break;
        case Stage::emit: stage_emit(config, report, log); break;
        case Stage::stats: stage_stats(config, report, log); break;
    }
}

}  // namespace eventforge
