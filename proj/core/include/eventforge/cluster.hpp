#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eventforge/source.hpp"
#include "eventforge/vocab.hpp"

namespace eventforge {

// One real-world entity/event: a set of per-source members plus, for
// list-extracted events, synthetic members and their provenance pages.
struct IdentityCluster {
    std::string canonical_iri;
    std::set<EntityKey> members;
    std::set<EntityKey> list_members;  // subset of members backed by list rows
    bool is_event = false;
    std::set<std::string> extracted_from;       // list page URLs
    std::vector<std::size_t> list_record_rows;  // indices into the record vector

    bool kg_backed() const { return members.size() > list_members.size(); }
};

class ClusterSet {
public:
    std::vector<IdentityCluster> clusters;

    void rebuild_index();
    const IdentityCluster* find(const EntityKey& member) const;
    std::optional<std::size_t> index_of(const EntityKey& member) const;
    const IdentityCluster* by_iri(const std::string& canonical_iri) const;

private:
    std::map<EntityKey, std::size_t> by_member_;
    std::map<std::string, std::size_t> by_iri_;
};

// Cross-version canonical-id persistence: member key -> canonical IRI.
class IdMap {
public:
    IdMap() = default;
    static IdMap load(std::istream& in);  // TSV: canonical_iri, member_key
    void save(std::ostream& out) const;   // sorted by member key

    void put(const std::string& member_key, const std::string& iri);
    const std::string* find(const std::string& member_key) const;
    bool empty() const { return by_member_.empty(); }

    // Largest <n> over persisted iris of the form "...<prefix><n>".
    std::size_t max_sequence(const std::string& iri_prefix) const;

    const std::map<std::string, std::string>& entries() const { return by_member_; }

private:
    std::map<std::string, std::string> by_member_;
};

// Connected components of the sameAs graph over `ids` plus every key the
// links mention. Canonical IRIs (<base>/resource/event_<n> or entity_<n>)
// are assigned in order of each component's smallest member key; persisted
// ids from the IdMap are reused and fresh sequences start past them.
// sameAs conflicts (two members from one source) are kept but logged.
ClusterSet cluster_same_as(const std::set<EntityKey>& ids,
                           const std::vector<std::pair<EntityKey, EntityKey>>& links,
                           const std::set<EntityKey>& events, const IdMap& persisted,
                           const vocab::Schema& schema, std::vector<std::string>& review_log);

}  // namespace eventforge
