#include "eventforge/emit.hpp"

#include <algorithm>
#include <stdexcept>

namespace eventforge {

GraphLayout GraphLayout::build(const SourceRegistry& registry, const vocab::Schema& schema) {
    GraphLayout layout;
    layout.schema = schema;
    for (const DatasetDescriptor& d : registry.by_trust()) {
        layout.source_graphs.emplace(d.name, d.graph_iri);
    }
    layout.fused_graph = rdf::Iri{schema.graph_ns() + "event_kg"};
    return layout;
}

bool GraphLayout::contains(const rdf::Iri& graph) const {
    if (graph == fused_graph) return true;
    for (const auto& [_, iri] : source_graphs) {
        if (iri == graph) return true;
    }
    return false;
}

const rdf::Iri* GraphLayout::graph_of(const std::string& source) const {
    auto it = source_graphs.find(source);
    return it == source_graphs.end() ? nullptr : &it->second;
}

std::optional<std::string> GraphLayout::source_of(const rdf::Iri& graph) const {
    for (const auto& [name, iri] : source_graphs) {
        if (iri == graph) return name;
    }
    return std::nullopt;
}

void QuadBuffer::add(rdf::Quad quad) { quads_.insert(std::move(quad)); }

void QuadBuffer::add(rdf::Term subject, std::string predicate, rdf::Term object,
                     const rdf::Iri& graph) {
    quads_.insert(rdf::make_quad(std::move(subject), rdf::Iri{std::move(predicate)},
                                 std::move(object), graph));
}

std::map<std::string, std::size_t> QuadBuffer::count_by_graph() const {
    std::map<std::string, std::size_t> counts;
    for (const rdf::Quad& q : quads_) ++counts[q.graph.value];
    return counts;
}

namespace {

rdf::Term node(const std::string& iri) { return rdf::Iri{iri}; }

rdf::Term date_literal(const FlexDate& d) { return d.to_literal(); }

rdf::Term count_literal(std::int64_t n) {
    return rdf::typed_literal(std::to_string(n), vocab::kXsdInteger);
}

rdf::Term text_literal(const std::string& value, const std::string& lang) {
    if (lang.empty()) return rdf::plain_literal(value);
    return rdf::lang_literal(value, lang);
}

// The graph that carries per-language interlink counters: the language's
// wikipedia source when registered, any other source with the language
// otherwise.
const rdf::Iri* language_graph(const std::string& language, const EmitModel& model,
                               const GraphLayout& layout) {
    const DatasetDescriptor* fallback = nullptr;
    for (const DatasetDescriptor& d : model.registry.by_trust()) {
        if (d.language != language) continue;
        if (d.name.rfind("wikipedia-", 0) == 0) return layout.graph_of(d.name);
        if (!fallback) fallback = &d;
    }
    return fallback ? layout.graph_of(fallback->name) : nullptr;
}

bool direct_role(const std::string& predicate) {
    return is_structural_role(predicate) || predicate == vocab::kSemHasPlace;
}

}  // namespace

void emit_core(const IdentityCluster& cluster, const FusedView& view, const EmitModel& model,
               const GraphLayout& layout, QuadBuffer& out) {
    if (cluster.canonical_iri.empty()) {
        throw std::logic_error("emit_core: cluster without canonical id (stage ordering bug)");
    }
    const rdf::Iri& fused = layout.fused_graph;
    const std::string& iri = cluster.canonical_iri;

    out.add(node(iri), vocab::kRdfType,
            node(cluster.is_event ? vocab::kSemEvent : vocab::kSemCore), fused);
    if (model.place_clusters.count(iri)) {
        out.add(node(iri), vocab::kRdfType, node(vocab::kSemPlace), fused);
    }
    for (const std::string& type : view.types.types) {
        out.add(node(iri), vocab::kRdfType, node(type), fused);
    }

    // Fused text fields land in the fused graph.
    for (const auto& [lang, label] : view.text.labels) {
        out.add(node(iri), vocab::kRdfsLabel, text_literal(label, lang), fused);
    }
    for (const auto& [lang, aliases] : view.text.aliases) {
        for (const std::string& alias : aliases) {
            out.add(node(iri), vocab::kDctermsAlternative, text_literal(alias, lang), fused);
        }
    }
    for (const auto& [lang, descriptions] : view.text.descriptions) {
        for (const std::string& description : descriptions) {
            out.add(node(iri), vocab::kDctermsDescription, text_literal(description, lang),
                    fused);
        }
    }

    if (view.scope.begin) {
        out.add(node(iri), vocab::kSemHasBeginTimeStamp, date_literal(*view.scope.begin), fused);
    }
    if (view.scope.end) {
        out.add(node(iri), vocab::kSemHasEndTimeStamp, date_literal(*view.scope.end), fused);
    }
    for (const std::string& place : view.locations) {
        out.add(node(iri), vocab::kSemHasPlace, node(place), fused);
    }

    // Per-source facts go to the stating source's graph, subject stays the
    // canonical node.
    for (const EntityKey& m : cluster.members) {
        const RawEntity* entity = model.store.find(m);
        const rdf::Iri* graph = layout.graph_of(m.source);
        if (!entity || !graph) continue;
        for (const auto& [lang, label] : entity->labels) {
            out.add(node(iri), vocab::kRdfsLabel, text_literal(label, lang), *graph);
        }
        for (const auto& [lang, aliases] : entity->aliases) {
            for (const std::string& alias : aliases) {
                out.add(node(iri), vocab::kDctermsAlternative, text_literal(alias, lang),
                        *graph);
            }
        }
        for (const auto& [lang, description] : entity->descriptions) {
            out.add(node(iri), vocab::kDctermsDescription, text_literal(description, lang),
                    *graph);
        }
        if (entity->existence.begin) {
            out.add(node(iri), vocab::kSemHasBeginTimeStamp,
                    date_literal(*entity->existence.begin), *graph);
        }
        if (entity->existence.end) {
            out.add(node(iri), vocab::kSemHasEndTimeStamp, date_literal(*entity->existence.end),
                    *graph);
        }
    }

    // List rows contribute their description and date to their source graph.
    for (std::size_t row : cluster.list_record_rows) {
        if (row >= model.records.size()) continue;
        const ListEventRecord& rec = model.records[row];
        const rdf::Iri* graph = layout.graph_of(rec.source);
        if (!graph) continue;
        out.add(node(iri), vocab::kDctermsDescription,
                text_literal(rec.description, rec.language), *graph);
        if (rec.date.begin) {
            out.add(node(iri), vocab::kSemHasBeginTimeStamp, date_literal(*rec.date.begin),
                    *graph);
        }
        if (rec.date.end) {
            out.add(node(iri), vocab::kSemHasEndTimeStamp, date_literal(*rec.date.end), *graph);
        }
    }
}

void emit_provenance(const IdentityCluster& cluster, const EmitModel& model,
                     const GraphLayout& layout, QuadBuffer& out) {
    if (cluster.members.empty() && cluster.extracted_from.empty()) {
        throw std::logic_error("emit_provenance: cluster " + cluster.canonical_iri +
                               " has neither members nor list pages");
    }
    for (const EntityKey& m : cluster.members) {
        if (cluster.list_members.count(m)) continue;
        const rdf::Iri* graph = layout.graph_of(m.source);
        if (!graph) continue;
        std::string member_iri = model.registry.entity_iri(m);
        if (!rdf::is_valid_iri(member_iri)) continue;
        out.add(node(cluster.canonical_iri), vocab::kOwlSameAs, node(member_iri), *graph);
    }
    const std::string extracted_from = layout.schema.extracted_from();
    for (std::size_t row : cluster.list_record_rows) {
        if (row >= model.records.size()) continue;
        const ListEventRecord& rec = model.records[row];
        const rdf::Iri* graph = layout.graph_of(rec.source);
        if (!graph) continue;
        std::string page = rec.url.empty() ? rec.list_page : rec.url;
        if (!rdf::is_valid_iri(page)) continue;
        out.add(node(cluster.canonical_iri), extracted_from, node(page), *graph);
    }
}

void emit_void(const EmitModel& model, const GraphLayout& layout, QuadBuffer& out) {
    auto counts = out.count_by_graph();
    auto describe = [&](const rdf::Iri& graph, std::optional<FlexDate> created,
                        const std::string& language) {
        out.add(node(graph.value), vocab::kRdfType, node(vocab::kVoidDataset),
                layout.fused_graph);
        std::size_t n = counts.count(graph.value) ? counts.at(graph.value) : 0;
        out.add(node(graph.value), vocab::kVoidTriples,
                count_literal(static_cast<std::int64_t>(n)), layout.fused_graph);
        if (created) {
            out.add(node(graph.value), vocab::kDctermsCreated, date_literal(*created),
                    layout.fused_graph);
        }
        if (!language.empty()) {
            out.add(node(graph.value), vocab::kDctermsLanguage, rdf::plain_literal(language),
                    layout.fused_graph);
        }
    };
    for (const DatasetDescriptor& d : model.registry.by_trust()) {
        describe(d.graph_iri, d.creation_date, d.language);
    }
    describe(layout.fused_graph, model.dataset_date, "");
}

EmitResult emit_dataset(const EmitModel& model, const GraphLayout& layout) {
    EmitResult result;
    QuadBuffer out;

    // Entities emit only when an extracted relation references them.
    std::set<std::string> referenced;
    for (const FusedRelation& r : model.relations) {
        referenced.insert(r.subject_iri);
        if (r.object_is_iri()) referenced.insert(r.object_iri());
    }
    for (const auto& [pair, _] : model.links) {
        referenced.insert(pair.first);
        referenced.insert(pair.second);
    }
    for (const auto& [pair, _] : model.mentions) {
        referenced.insert(pair.first);
        referenced.insert(pair.second);
    }

    std::set<std::string> emitted;
    for (const IdentityCluster& cluster : model.clusters.clusters) {
        if (!cluster.is_event && !referenced.count(cluster.canonical_iri)) {
            ++result.skipped_entity_clusters;
            continue;
        }
        emitted.insert(cluster.canonical_iri);
        auto view_it = model.views.find(cluster.canonical_iri);
        static const FusedView empty_view;
        const FusedView& view =
            view_it == model.views.end() ? empty_view : view_it->second;
        emit_core(cluster, view, model, layout, out);
        emit_provenance(cluster, model, layout, out);
    }

    // Direct triples for hierarchy roles; reified nodes for the rest.
    std::set<std::pair<std::string, std::string>> covered_pairs;
    std::size_t next_relation = 0;
    const std::string relation_class = layout.schema.relation_class();
    const std::string links_pred = layout.schema.links();
    const std::string mentions_pred = layout.schema.mentions();

    auto emit_counters = [&](const std::string& relation_iri, const std::string& subject,
                             const std::string& object) {
        auto lit = model.links.find({subject, object});
        if (lit != model.links.end()) {
            out.add(node(relation_iri), links_pred, count_literal(total(lit->second)),
                    layout.fused_graph);
            for (const auto& [lang, n] : lit->second) {
                if (const rdf::Iri* g = language_graph(lang, model, layout)) {
                    out.add(node(relation_iri), links_pred, count_literal(n), *g);
                }
            }
        }
        auto key = std::minmax(subject, object);
        auto mit = model.mentions.find({key.first, key.second});
        if (mit != model.mentions.end()) {
            out.add(node(relation_iri), mentions_pred, count_literal(total(mit->second)),
                    layout.fused_graph);
            for (const auto& [lang, n] : mit->second) {
                if (const rdf::Iri* g = language_graph(lang, model, layout)) {
                    out.add(node(relation_iri), mentions_pred, count_literal(n), *g);
                }
            }
        }
    };

    auto reify = [&](const std::string& subject, const rdf::Term& object,
                     const std::string& role, const std::set<std::string>& sources,
                     const std::map<std::string, TemporalScope>& per_source,
                     const TemporalScope& fused_validity) {
        std::string relation_iri =
            layout.schema.resource_ns() + "relation_" + std::to_string(next_relation++);
        ++result.relation_nodes;
        auto stamp = [&](const rdf::Iri& graph) {
            out.add(node(relation_iri), vocab::kRdfType, node(relation_class), graph);
            out.add(node(relation_iri), vocab::kRdfSubject, node(subject), graph);
            out.add(node(relation_iri), vocab::kRdfObject, object, graph);
            if (!role.empty()) {
                out.add(node(relation_iri), vocab::kSemRoleType, node(role), graph);
            }
        };
        if (sources.empty()) {
            stamp(layout.fused_graph);
        }
        for (const std::string& source : sources) {
            const rdf::Iri* graph = layout.graph_of(source);
            if (!graph) continue;
            stamp(*graph);
            auto it = per_source.find(source);
            if (it == per_source.end()) continue;
            if (it->second.begin) {
                out.add(node(relation_iri), vocab::kSemHasBeginTimeStamp,
                        date_literal(*it->second.begin), *graph);
            }
            if (it->second.end) {
                out.add(node(relation_iri), vocab::kSemHasEndTimeStamp,
                        date_literal(*it->second.end), *graph);
            }
        }
        if (fused_validity.begin) {
            out.add(node(relation_iri), vocab::kSemHasBeginTimeStamp,
                    date_literal(*fused_validity.begin), layout.fused_graph);
        }
        if (fused_validity.end) {
            out.add(node(relation_iri), vocab::kSemHasEndTimeStamp,
                    date_literal(*fused_validity.end), layout.fused_graph);
        }
        if (rdf::is_iri(object)) {
            emit_counters(relation_iri, subject, rdf::as_iri(object).value);
        }
    };

    for (const FusedRelation& r : model.relations) {
        if (!emitted.count(r.subject_iri)) continue;
        if (r.object_is_iri() && !emitted.count(r.object_iri())) continue;
        if (direct_role(r.predicate)) {
            if (!r.object_is_iri()) continue;
            for (const std::string& source : r.sources) {
                const rdf::Iri* graph = layout.graph_of(source);
                if (!graph) continue;
                out.add(node(r.subject_iri), r.predicate, node(r.object_iri()), *graph);
            }
            continue;
        }
        rdf::Term object = r.object_is_iri() ? node(r.object_iri())
                                             : rdf::Term{std::get<rdf::Literal>(r.object)};
        if (r.object_is_iri()) {
            covered_pairs.insert({r.subject_iri, r.object_iri()});
        }
        reify(r.subject_iri, object, r.predicate, r.sources, r.per_source, r.fused_validity);
    }

    // Interlinked pairs without a stated relation still get a relation node
    // carrying only the counters.
    std::set<std::pair<std::string, std::string>> counter_pairs;
    for (const auto& [pair, _] : model.links) counter_pairs.insert(pair);
    for (const auto& [pair, _] : model.mentions) {
        if (!counter_pairs.count(pair) && !counter_pairs.count({pair.second, pair.first})) {
            counter_pairs.insert(pair);
        }
    }
    for (const auto& pair : counter_pairs) {
        if (covered_pairs.count(pair)) continue;
        if (!emitted.count(pair.first) || !emitted.count(pair.second)) continue;
        reify(pair.first, node(pair.second), "", {}, {}, {});
    }

    emit_void(model, layout, out);

    result.quads = out.sorted();
    return result;
}

}  // namespace eventforge
