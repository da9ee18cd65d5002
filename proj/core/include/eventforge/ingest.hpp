#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eventforge/config.hpp"
#include "eventforge/entity.hpp"
#include "eventforge/relations.hpp"
#include "eventforge/source.hpp"

namespace eventforge {

// Declares, per source, which predicates carry which entity fields and how
// validity-annotated statements are encoded. Statement nodes follow the
// qualified-statement pattern: a relation triple points at an intermediate
// node that carries a `statement-value` triple (the real object) plus
// optional `validity-begin` / `validity-end` qualifiers. Those annotation
// triples are consumed during load.
class PropertyMap {
public:
    enum class Role {
        label,
        alias,
        description,
        type,            // instance-of
        subclass,        // subclass-of (feeds event class collection)
        begin,           // entity existence begin
        end,             // entity existence end
        same_as,
        category,
        statement_value,
        validity_begin,
        validity_end,
    };

    static std::optional<Role> role_from_string(std::string_view s);
    static std::string_view to_string(Role role);

    void add(const std::string& source, Role role, const std::string& predicate_iri);
    std::optional<Role> role(const std::string& source, const std::string& predicate_iri) const;

    // [property-map] rows: `source  role  predicate_iri`.
    static PropertyMap from_config(const ConfigFile& cfg);

private:
    std::map<std::pair<std::string, std::string>, Role> by_predicate_;
};

struct KgLoadResult {
    std::vector<RawRelation> relations;
    // (child class IRI, parent class IRI) per subclass-of triple.
    std::vector<std::pair<std::string, std::string>> subclass_edges;
    std::vector<std::string> warnings;
    std::size_t subjects = 0;
    std::size_t triples = 0;
    std::size_t parse_errors = 0;
};

// Reads one source dump (N-Triples) into the shared store. Every subject
// becomes a RawEntity; mapped predicates route into entity fields; unmapped
// predicates become RawRelations. Object IRIs resolve to this source's
// local ids via its iri_prefix, to other sources via theirs (sameAs
// targets), and stay full-IRI local ids otherwise.
KgLoadResult load_kg_dump(const DatasetDescriptor& source, std::istream& dump,
                          const PropertyMap& map, const SourceRegistry& registry,
                          EntityStore& store);

}  // namespace eventforge
