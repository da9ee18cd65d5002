#include "eventforge/list_match.hpp"

#include <algorithm>
#include <cctype>

#include "eventforge/identify.hpp"
#include "eventforge/text.hpp"

namespace eventforge {

ClusterMatchIndex ClusterMatchIndex::build(const ClusterSet& clusters,
                                           const EntityStore& store) {
    ClusterMatchIndex index;
    for (std::size_t i = 0; i < clusters.clusters.size(); ++i) {
        const IdentityCluster& c = clusters.clusters[i];
        if (!c.is_event) continue;
        Entry e;
        e.cluster_index = i;
        for (const EntityKey& m : c.members) {
            const RawEntity* entity = store.find(m);
            if (!entity) continue;
            if (entity->existence.begin) {
                if (!e.scope.begin || *entity->existence.begin < *e.scope.begin) {
                    e.scope.begin = entity->existence.begin;
                }
            }
            if (entity->existence.end) {
                if (!e.scope.end || *entity->existence.end > *e.scope.end) {
                    e.scope.end = entity->existence.end;
                }
            }
            for (const auto& [_, label] : entity->labels) {
                e.labels.push_back(label);
                e.link_keys.insert(text::fold_key(label));
            }
            for (const auto& [_, targets] : entity->out_links) {
                for (const std::string& t : targets) e.link_keys.insert(text::fold_key(t));
            }
        }
        index.events.push_back(std::move(e));
    }
    return index;
}

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const std::string& x : a) inter += b.count(x);
    std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

MatchOutcome match_list_event(const ListEventRecord& record, const ClusterMatchIndex& index,
                              const ClusterSet& clusters, const MatchConfig& cfg) {
    std::set<std::string> record_links;
    for (const std::string& l : record.linked_entities) record_links.insert(text::fold_key(l));

    struct Hit {
        std::size_t cluster_index;
        double jaccard;
        const std::string* iri;
    };
    std::vector<Hit> hits;

    for (const auto& entry : index.events) {
        // (a) date gate: the record range must intersect the known scope.
        if (!entry.scope.has_any()) continue;
        if (!record.date.intersects(entry.scope)) continue;

        // (b) link overlap with the cluster's out-links or labels.
        std::size_t overlap = 0;
        for (const std::string& l : record_links) overlap += entry.link_keys.count(l);
        if (overlap == 0) continue;

        // (c) text evidence: a cluster label inside the description, or a
        // strong link overlap.
        double j = jaccard(record_links, entry.link_keys);
        bool label_in_description =
            std::any_of(entry.labels.begin(), entry.labels.end(), [&](const std::string& label) {
                return text::folded_contains(record.description, label);
            });
        if (!label_in_description && j < cfg.jaccard_threshold) continue;

        hits.push_back({entry.cluster_index, j,
                        &clusters.clusters[entry.cluster_index].canonical_iri});
    }

    MatchOutcome out;
    if (hits.empty()) return out;
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.jaccard != b.jaccard) return a.jaccard > b.jaccard;
        return *a.iri < *b.iri;
    });
    out.cluster_index = hits[0].cluster_index;
    out.jaccard = hits[0].jaccard;
    // A genuine tie resolves to the lowest canonical id and gets flagged
    // for review.
    out.ambiguous = hits.size() > 1 && hits[1].jaccard == hits[0].jaccard;
    return out;
}

IntegrationResult integrate_sources(const EntityStore& store, const EventSet& kg_events,
                                    const std::vector<ListEventRecord>& records,
                                    const std::vector<ListEventCandidate>& list_candidates,
                                    const IdMap& persisted, const vocab::Schema& schema,
                                    const MatchConfig& cfg) {
    IntegrationResult result;

    std::set<EntityKey> ids;
    for (const auto& [key, _] : store) ids.insert(key);
    auto links = collect_same_as_links(store);

    result.clusters =
        cluster_same_as(ids, links, kg_events, persisted, schema, result.review_log);

    ClusterMatchIndex index = ClusterMatchIndex::build(result.clusters, store);

    // Fresh list clusters continue the event sequence past both persisted
    // ids and the ones just assigned.
    const std::string event_prefix = schema.resource_ns() + "event_";
    std::size_t next_event = persisted.max_sequence(event_prefix);
    for (const IdentityCluster& c : result.clusters.clusters) {
        if (!text::starts_with(c.canonical_iri, event_prefix)) continue;
        std::string_view tail = std::string_view(c.canonical_iri).substr(event_prefix.size());
        if (!tail.empty() && std::all_of(tail.begin(), tail.end(), [](unsigned char ch) {
                return std::isdigit(ch);
            })) {
            next_event = std::max(next_event, static_cast<std::size_t>(std::stoull(std::string(tail))));
        }
    }

    // Matching never merges KG clusters; records either attach or open a
    // new cluster. New clusters are created in record order.
    for (const ListEventCandidate& cand : list_candidates) {
        const ListEventRecord& record = records[cand.record_index];
        MatchOutcome outcome = match_list_event(record, index, result.clusters, cfg);
        std::size_t cluster_index;
        if (outcome.cluster_index) {
            cluster_index = *outcome.cluster_index;
            if (outcome.ambiguous) {
                result.review_log.push_back(
                    "record " + std::to_string(cand.record_index) + " (" + record.list_page +
                    ") matched several clusters; kept " +
                    result.clusters.clusters[cluster_index].canonical_iri);
            }
        } else {
            IdentityCluster fresh;
            fresh.canonical_iri = event_prefix + std::to_string(++next_event);
            fresh.is_event = true;
            EntityKey synthetic{record.source,
                                "list/" + record.list_page + "#" +
                                    std::to_string(cand.record_index)};
            fresh.members.insert(synthetic);
            fresh.list_members.insert(synthetic);
            result.clusters.clusters.push_back(std::move(fresh));
            cluster_index = result.clusters.clusters.size() - 1;
        }
        IdentityCluster& target = result.clusters.clusters[cluster_index];
        target.extracted_from.insert(cand.extracted_from);
        target.list_record_rows.push_back(cand.record_index);
        result.record_cluster[cand.record_index] = cluster_index;
    }

    result.clusters.rebuild_index();
    return result;
}

}  // namespace eventforge
