#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eventforge/cluster.hpp"
#include "eventforge/entity.hpp"
#include "eventforge/identify.hpp"
#include "eventforge/list_events.hpp"
#include "eventforge/relations.hpp"

namespace eventforge {

struct MatchConfig {
    double jaccard_threshold = 0.5;
};

// Precomputed per-cluster facts the match rules read.
struct ClusterMatchIndex {
    struct Entry {
        std::size_t cluster_index;
        TemporalScope scope;                  // union of member existence scopes
        std::set<std::string> link_keys;      // folded out-links + labels
        std::vector<std::string> labels;      // raw labels, all languages
    };
    std::vector<Entry> events;

    static ClusterMatchIndex build(const ClusterSet& clusters, const EntityStore& store);
};

struct MatchOutcome {
    std::optional<std::size_t> cluster_index;  // nullopt = create a new cluster
    double jaccard = 0.0;
    bool ambiguous = false;  // several clusters matched; tie-broken
};

// Rule-based attachment: a record joins an event cluster iff its date range
// intersects the cluster scope, at least one linked entity occurs among the
// cluster's out-links or labels, and either a cluster label occurs in the
// description (case/diacritic folded) or the link-overlap Jaccard reaches
// the threshold. Several qualifying clusters resolve by highest Jaccard,
// then lowest canonical id.
MatchOutcome match_list_event(const ListEventRecord& record, const ClusterMatchIndex& index,
                              const ClusterSet& clusters, const MatchConfig& cfg);

struct IntegrationResult {
    ClusterSet clusters;
    std::map<std::size_t, std::size_t> record_cluster;  // record row -> cluster index
    std::vector<std::string> review_log;
};

// Full integration step: sameAs clustering over the store, then list-record
// attachment; unmatched records open fresh event clusters with synthetic
// member keys ("list/<page>#<row>").
IntegrationResult integrate_sources(const EntityStore& store, const EventSet& kg_events,
                                    const std::vector<ListEventRecord>& records,
                                    const std::vector<ListEventCandidate>& list_candidates,
                                    const IdMap& persisted, const vocab::Schema& schema,
                                    const MatchConfig& cfg);

}  // namespace eventforge
