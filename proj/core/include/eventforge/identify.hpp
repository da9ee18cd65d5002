#pragma once

#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "eventforge/config.hpp"
#include "eventforge/entity.hpp"
#include "eventforge/list_events.hpp"
#include "eventforge/source.hpp"

namespace eventforge {

enum class EvidenceKind {
    class_instance,
    same_as_propagation,
    category_regex,
    event_list,
    current_events,
};

std::string_view to_string(EvidenceKind kind);
std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s);

struct EventEvidence {
    EvidenceKind kind;
    std::string detail;  // matched class / regex / list page

    friend auto operator<=>(const EventEvidence&, const EventEvidence&) = default;
};

// KG-backed event candidates; every entry carries at least one evidence item.
using KgEventCandidates = std::map<EntityKey, std::vector<EventEvidence>>;

// Transitive subclass closure of `roots` (child, parent) edges downward,
// excluding blacklisted classes and classes reachable only through them.
// Cycle-safe; includes non-blacklisted roots.
std::set<std::string> collect_event_classes(
    const std::vector<std::pair<std::string, std::string>>& subclass_edges,
    const std::set<std::string>& roots, const std::set<std::string>& blacklist);

// Entities with at least one type in event_classes become candidates.
void identify_by_class(const EntityStore& store, const std::set<std::string>& event_classes,
                       KgEventCandidates& candidates);

// Per-language category regex table. Patterns compile at construction;
// invalid ones raise ConfigError.
class CategoryRegexTable {
public:
    CategoryRegexTable() = default;

    void add(const std::string& language, const std::string& pattern);
    bool empty() const { return patterns_.empty(); }

    // Built-in defaults for en/de/fr/ru/pt, overridable per language from
    // the [category-regex] config section.
    static CategoryRegexTable from_config(const ConfigFile& cfg);
    static CategoryRegexTable defaults();

    // True when any of the entity's categories matches the pattern for one
    // of the probed languages. Returns the matched category.
    std::optional<std::string> match(const RawEntity& entity,
                                     const std::string& source_language) const;

    const std::string* pattern_text(const std::string& language) const;

private:
    std::map<std::string, std::pair<std::string, std::regex>> patterns_;
};

void identify_by_category(const EntityStore& store, const CategoryRegexTable& table,
                          const SourceRegistry& registry, KgEventCandidates& candidates);

// Propagates event-ness across owl:sameAs components: every entity
// transitively connected to a candidate becomes one. Idempotent, only adds.
void propagate_same_as(KgEventCandidates& candidates,
                       const std::vector<std::pair<EntityKey, EntityKey>>& same_as_links);

// Gathers the global sameAs link list from the store.
std::vector<std::pair<EntityKey, EntityKey>> collect_same_as_links(const EntityStore& store);

struct ListEventCandidate {
    std::size_t record_index;  // into the loaded record vector
    EventEvidence evidence;
    std::string extracted_from;  // list page URL
};

std::vector<ListEventCandidate> promote_list_events(const std::vector<ListEventRecord>& records,
                                                    const SourceRegistry& registry);

}  // namespace eventforge
