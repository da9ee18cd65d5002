#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "eventforge/cluster.hpp"
#include "eventforge/date.hpp"
#include "eventforge/entity.hpp"
#include "eventforge/list_events.hpp"
#include "eventforge/relations.hpp"
#include "eventforge/source.hpp"

namespace eventforge {

enum class TimePosition { begin, end };

struct TimeCandidate {
    FlexDate value;
    std::string source;
    TimePosition position = TimePosition::begin;
};

// Time fusion pipeline:
//   (i)  when any candidate is not a unit-boundary date, boundary dates
//        (Jan 1 / first of month at begin, Dec 31 / last of month at end)
//        are discarded;
//   (ii) a strict plurality over exact FlexDate equality wins;
//   (iii) otherwise the most-trusted source decides.
// Returns nullopt only for an empty candidate set; the result is always
// drawn from the candidates and ignores their order.
std::optional<FlexDate> fuse_time(const std::vector<TimeCandidate>& candidates,
                                  TimePosition position, const SourceRegistry& trust);

// Place-hierarchy edges at cluster level: place -> containing place.
struct PlaceHierarchy {
    std::map<std::string, std::set<std::string>> parents;

    void add(const std::string& place, const std::string& container);

    // Deterministic cycle breaking: nodes are visited in sorted order and
    // the edge closing a cycle is dropped with a warning.
    static PlaceHierarchy acyclic(const PlaceHierarchy& raw, std::vector<std::string>& warnings);

    // Transitive containers of `place` (excluding itself).
    std::set<std::string> ancestors(const std::string& place) const;
};

// Drops every location that transitively contains another member of the
// set: {Paris, France, Lyon} with Paris and Lyon inside France keeps
// {Paris, Lyon}. Subset of the input, idempotent, never empties a
// non-empty input.
std::set<std::string> fuse_locations(const std::set<std::string>& locations,
                                     const PlaceHierarchy& hierarchy);

// source -> source type IRI -> target ontology type IRI.
struct TypeAlignment {
    std::map<std::pair<std::string, std::string>, std::string> to_target;

    // TSV: source, source_type_iri, target_type_iri.
    static TypeAlignment load(std::istream& in);
};

struct TypeFusion {
    std::set<std::string> types;
    std::size_t unaligned = 0;
};

TypeFusion fuse_types(const IdentityCluster& cluster, const EntityStore& store,
                      const TypeAlignment& alignment);

struct FusedText {
    std::map<std::string, std::string> labels;                  // lang -> label
    std::map<std::string, std::set<std::string>> aliases;       // lang -> aliases
    std::map<std::string, std::set<std::string>> descriptions;  // lang -> descriptions
};

// Per language the most-trusted source's label wins; the other labels
// demote to aliases; descriptions merge as a set.
FusedText fuse_text(const IdentityCluster& cluster, const EntityStore& store,
                    const std::vector<ListEventRecord>& records, const SourceRegistry& trust);

// The per-cluster fused view.
struct FusedView {
    TemporalScope scope;
    std::set<std::string> locations;  // canonical cluster IRIs, minimal set
    TypeFusion types;
    FusedText text;
    // source -> per-source scope (feeds source graphs and the agreement
    // statistic).
    std::map<std::string, TemporalScope> per_source_scope;
};

FusedView fuse_cluster(const IdentityCluster& cluster, const EntityStore& store,
                       const std::vector<ListEventRecord>& records,
                       const std::set<std::string>& member_locations,
                       const PlaceHierarchy& hierarchy, const TypeAlignment& alignment,
                       const SourceRegistry& trust);

// A cross-source relation group between two canonical nodes (or a node and
// a literal): validity scopes fuse with the same time pipeline.
struct FusedRelation {
    std::string subject_iri;
    std::variant<std::string, rdf::Literal> object;  // canonical IRI or literal
    std::string predicate;   // canonical role when mapped, source predicate otherwise
    RelationCategory category = RelationCategory::plain;
    TemporalScope fused_validity;
    std::map<std::string, TemporalScope> per_source;  // contributing sources
    std::set<std::string> sources;

    bool object_is_iri() const { return std::holds_alternative<std::string>(object); }
    const std::string& object_iri() const { return std::get<std::string>(object); }
};

// Groups raw relations by (subject cluster, canonical predicate, object)
// and fuses their validity scopes. Relations whose endpoints have no
// cluster are dropped (counted in `dropped`).
std::vector<FusedRelation> fuse_relations(const std::vector<RawRelation>& relations,
                                          const ClusterSet& clusters,
                                          const SourceRegistry& trust, std::size_t& dropped);

}  // namespace eventforge
