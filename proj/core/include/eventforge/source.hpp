#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eventforge/config.hpp"
#include "eventforge/date.hpp"
#include "eventforge/rdf.hpp"

namespace eventforge {

enum class SourceKind { kg, event_list, current_events };

std::string_view to_string(SourceKind kind);
std::optional<SourceKind> source_kind_from_string(std::string_view s);

// (source, local id) — the per-source identity of an entity.
struct EntityKey {
    std::string source;
    std::string local_id;

    friend auto operator<=>(const EntityKey&, const EntityKey&) = default;
};

std::string to_string(const EntityKey& key);  // "source:local_id"

struct DatasetDescriptor {
    std::string name;
    SourceKind kind = SourceKind::kg;
    rdf::Iri graph_iri;
    int trust_rank = 0;  // 1 = most trusted
    std::string language;  // empty = none
    std::optional<FlexDate> creation_date;
    std::string iri_prefix;  // maps IRIs <-> local ids; may be empty for list sources
    std::string path;        // dump (.nt) or record (.tsv) file
};

// Raw config row; blank fields are derived from the source name.
struct SourceSpec {
    std::string name;
    std::string kind;      // "kg" | "event-list" | "current-events" | "" (derived)
    std::string language;  // "-" or "" = none/derived
    int trust_rank = 0;    // 0 = derive from family order
    std::string iri_prefix;
    std::string path;
    std::optional<FlexDate> creation_date;
};

// Registered sources with a total trust order. The default family order is
// wikidata, dbpedia, wikipedia, wcep, yago; within a family, declaration
// order decides. Explicit ranks, when given, must be given for every source
// and be duplicate-free.
class SourceRegistry {
public:
    SourceRegistry() = default;

    static SourceRegistry from_specs(std::vector<SourceSpec> specs, const std::string& base_iri);
    static SourceRegistry from_config(const ConfigFile& cfg, const std::string& base_iri);

    const std::vector<DatasetDescriptor>& by_trust() const { return ordered_; }
    bool empty() const { return ordered_.empty(); }
    std::size_t size() const { return ordered_.size(); }

    const DatasetDescriptor* find(std::string_view name) const;
    const DatasetDescriptor& require(std::string_view name) const;
    int trust_rank(std::string_view name) const;

    // Longest-prefix match of an IRI against registered iri_prefixes.
    std::optional<EntityKey> resolve_iri(std::string_view iri) const;
    // prefix + local_id (falls back to local_id when it is a full IRI).
    std::string entity_iri(const EntityKey& key) const;

    // Sources whose language matches, in trust order.
    std::vector<const DatasetDescriptor*> with_language(std::string_view language) const;

private:
    std::vector<DatasetDescriptor> ordered_;
};

}  // namespace eventforge
