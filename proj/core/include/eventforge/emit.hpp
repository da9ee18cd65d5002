#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eventforge/cluster.hpp"
#include "eventforge/fuse.hpp"
#include "eventforge/interlink.hpp"
#include "eventforge/ntriples.hpp"
#include "eventforge/rdf.hpp"
#include "eventforge/source.hpp"
#include "eventforge/vocab.hpp"

namespace eventforge {

// Named-graph layout: one graph per source plus the fused graph
// <base>/graph/event_kg. Every emitted quad lands in one of these.
struct GraphLayout {
    std::map<std::string, rdf::Iri> source_graphs;  // source name -> graph IRI
    rdf::Iri fused_graph;
    vocab::Schema schema;

    static GraphLayout build(const SourceRegistry& registry, const vocab::Schema& schema);

    bool contains(const rdf::Iri& graph) const;
    const rdf::Iri* graph_of(const std::string& source) const;
    std::optional<std::string> source_of(const rdf::Iri& graph) const;
};

// Deduplicating quad collector with deterministic (sorted) order.
class QuadBuffer {
public:
    void add(rdf::Quad quad);
    void add(rdf::Term subject, std::string predicate, rdf::Term object,
             const rdf::Iri& graph);

    const std::set<rdf::Quad>& quads() const { return quads_; }
    std::vector<rdf::Quad> sorted() const { return {quads_.begin(), quads_.end()}; }
    std::map<std::string, std::size_t> count_by_graph() const;
    std::size_t size() const { return quads_.size(); }

private:
    std::set<rdf::Quad> quads_;
};

// Everything the emitter reads.
struct EmitModel {
    const SourceRegistry& registry;
    const EntityStore& store;
    const std::vector<ListEventRecord>& records;
    const ClusterSet& clusters;
    const std::map<std::string, FusedView>& views;  // canonical IRI -> fused view
    const std::vector<FusedRelation>& relations;    // plain ones already dropped
    const PairCounts& links;                        // canonical-IRI pairs, directed
    const PairCounts& mentions;                     // canonical-IRI pairs, ordered
    const std::set<std::string>& place_clusters;    // canonical IRIs used as locations
    std::optional<FlexDate> dataset_date;           // VoID creation date for the output
};

// Core node quads for one cluster: typing, per-language text, timestamps
// and fused hasPlace links. Fused facts go to the fused graph, per-source
// facts to their source graphs.
void emit_core(const IdentityCluster& cluster, const FusedView& view, const EmitModel& model,
               const GraphLayout& layout, QuadBuffer& out);

// owl:sameAs per KG member into that member's graph; extractedFrom per
// list row into the row's source graph.
void emit_provenance(const IdentityCluster& cluster, const EmitModel& model,
                     const GraphLayout& layout, QuadBuffer& out);

// One void:Dataset node per graph, carrying creation date and the quad
// count of that graph (the VoID block itself is not counted).
void emit_void(const EmitModel& model, const GraphLayout& layout, QuadBuffer& out);

struct EmitResult {
    std::vector<rdf::Quad> quads;
    std::size_t relation_nodes = 0;
    std::size_t skipped_entity_clusters = 0;  // no extracted relation -> not emitted
};

// Full dataset assembly. Structural roles (hasSubEvent, previousEvent,
// nextEvent, containedInPlace) and hasPlace emit as direct triples between
// core nodes; everything else reifies as <resource/relation_<n>> nodes
// carrying roleType, validity and the links/mentions counters. Entity
// clusters with no extracted relation are left out; event clusters always
// emit.
EmitResult emit_dataset(const EmitModel& model, const GraphLayout& layout);

}  // namespace eventforge
