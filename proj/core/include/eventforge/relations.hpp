#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "eventforge/date.hpp"
#include "eventforge/entity.hpp"
#include "eventforge/rdf.hpp"
#include "eventforge/source.hpp"
#include "eventforge/vocab.hpp"

namespace eventforge {

enum class RelationCategory { plain, temporal, indirect, structural };

std::string_view to_string(RelationCategory c);
std::optional<RelationCategory> relation_category_from_string(std::string_view s);

// One source-stated relation. `predicate` is the source vocabulary IRI;
// `role_type` is the canonical target IRI once a mapping row applied.
struct RawRelation {
    std::string source;
    EntityKey subject;
    std::variant<EntityKey, rdf::Literal> object;
    std::string predicate;
    std::string role_type;  // empty = unmapped
    TemporalScope validity;
    RelationCategory category = RelationCategory::plain;

    bool object_is_entity() const { return std::holds_alternative<EntityKey>(object); }
    const EntityKey& object_key() const { return std::get<EntityKey>(object); }
};

enum class MappingGuard { none, both_endpoints_events, subject_is_place };

struct PredicateMapping {
    std::string source;
    std::string source_predicate;
    std::string target_role;
    MappingGuard guard = MappingGuard::none;
};

// Loads the mapping table: TSV `source  source_predicate_iri  target_role_iri  guard`.
std::vector<PredicateMapping> load_mapping_table(std::istream& in);

struct ExtractionLog {
    std::vector<std::string> warnings;
};

// The set of event entity keys, as produced by the identification passes.
using EventSet = std::set<EntityKey>;

// Marks relations carrying a usable validity scope as temporal. A scope
// with end < begin is dropped with a warning and the relation reverts to
// an unscoped one.
void extract_temporal_relations(std::vector<RawRelation>& relations, ExtractionLog& log);

// Applies the predicate mapping table: sets role_type where a row matches
// and its guard holds; relations whose canonical role is structural
// (hasSubEvent / previousEvent / nextEvent / containedInPlace) get the
// structural category unless already temporal. subEventOf rows normalize
// the direction: (child, p, parent) becomes (parent, hasSubEvent, child).
void map_structural(std::vector<RawRelation>& relations,
                    const std::vector<PredicateMapping>& mapping, const EventSet& events,
                    const vocab::Schema& schema, ExtractionLog& log);

// Promotes remaining plain relations with an event endpoint, or with both
// endpoints carrying a known existence time, to the indirect category.
void extract_indirect_relations(std::vector<RawRelation>& relations, const EntityStore& store,
                                const EventSet& events);

bool is_structural_role(std::string_view role_iri);

// Entity keys of the places referenced by hasPlace/containedInPlace roles.
std::set<EntityKey> collect_place_keys(const std::vector<RawRelation>& relations);

}  // namespace eventforge
