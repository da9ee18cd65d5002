#include "eventforge/cluster.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <istream>
#include <ostream>

#include "eventforge/text.hpp"
#include "eventforge/tsv.hpp"

namespace eventforge {

void ClusterSet::rebuild_index() {
    by_member_.clear();
    by_iri_.clear();
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        for (const EntityKey& m : clusters[i].members) by_member_[m] = i;
        if (!clusters[i].canonical_iri.empty()) by_iri_[clusters[i].canonical_iri] = i;
    }
}

const IdentityCluster* ClusterSet::find(const EntityKey& member) const {
    auto idx = index_of(member);
    return idx ? &clusters[*idx] : nullptr;
}

std::optional<std::size_t> ClusterSet::index_of(const EntityKey& member) const {
    auto it = by_member_.find(member);
    if (it == by_member_.end()) return std::nullopt;
    return it->second;
}

const IdentityCluster* ClusterSet::by_iri(const std::string& canonical_iri) const {
    auto it = by_iri_.find(canonical_iri);
    return it == by_iri_.end() ? nullptr : &clusters[it->second];
}

IdMap IdMap::load(std::istream& in) {
    IdMap map;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& fields) {
        if (fields.size() != 2) {
            throw ConfigError("id map line " + std::to_string(line_no) +
                              ": expected 2 columns (canonical_iri, member_key)");
        }
        map.by_member_[fields[1]] = fields[0];
    });
    return map;
}

void IdMap::save(std::ostream& out) const {
    for (const auto& [member, iri] : by_member_) {
        out << tsv::format_row({iri, member});
    }
}

void IdMap::put(const std::string& member_key, const std::string& iri) {
    by_member_[member_key] = iri;
}

const std::string* IdMap::find(const std::string& member_key) const {
    auto it = by_member_.find(member_key);
    return it == by_member_.end() ? nullptr : &it->second;
}

std::size_t IdMap::max_sequence(const std::string& iri_prefix) const {
    std::size_t max_n = 0;
    for (const auto& [_, iri] : by_member_) {
        if (!text::starts_with(iri, iri_prefix)) continue;
        std::string_view tail = std::string_view(iri).substr(iri_prefix.size());
        if (tail.empty()) continue;
        bool digits = std::all_of(tail.begin(), tail.end(), [](unsigned char c) {
            return std::isdigit(c);
        });
        if (digits) max_n = std::max(max_n, static_cast<std::size_t>(std::stoull(std::string(tail))));
    }
    return max_n;
}

ClusterSet cluster_same_as(const std::set<EntityKey>& ids,
                           const std::vector<std::pair<EntityKey, EntityKey>>& links,
                           const std::set<EntityKey>& events, const IdMap& persisted,
                           const vocab::Schema& schema, std::vector<std::string>& review_log) {
    // Union-find with path halving over the full key universe.
    std::map<EntityKey, EntityKey> parent;
    auto ensure = [&](const EntityKey& k) { parent.try_emplace(k, k); };
    for (const EntityKey& k : ids) ensure(k);
    for (const auto& [a, b] : links) {
        ensure(a);
        ensure(b);
    }
    std::function<EntityKey(EntityKey)> find = [&](EntityKey k) {
        while (true) {
            EntityKey& p = parent.at(k);
            if (p == k) return k;
            EntityKey& gp = parent.at(p);
            p = gp;  // path halving
            k = gp;
        }
    };
    for (const auto& [a, b] : links) {
        EntityKey ra = find(a), rb = find(b);
        if (ra == rb) continue;
        if (rb < ra) std::swap(ra, rb);
        parent.at(rb) = ra;  // smaller key wins: deterministic roots
    }

    std::map<EntityKey, IdentityCluster> by_root;
    for (const auto& [k, _] : parent) {
        by_root[find(k)].members.insert(k);
    }

    ClusterSet out;
    out.clusters.reserve(by_root.size());
    for (auto& [root, cluster] : by_root) {
        cluster.is_event = std::any_of(cluster.members.begin(), cluster.members.end(),
                                       [&](const EntityKey& m) { return events.count(m) > 0; });
        // sameAs conflict: two distinct local ids from one source.
        std::map<std::string, int> per_source;
        for (const EntityKey& m : cluster.members) ++per_source[m.source];
        for (const auto& [src, n] : per_source) {
            if (n > 1) {
                review_log.push_back("cluster rooted at " + to_string(root) + " holds " +
                                     std::to_string(n) + " members from source " + src);
            }
        }
        out.clusters.push_back(std::move(cluster));
    }
    // by_root is keyed by the component root; with smaller-key-wins unions
    // the root IS the smallest member, so clusters are already ordered by
    // their smallest member key.

    const std::string resource_ns = schema.resource_ns();
    std::size_t next_event = persisted.max_sequence(resource_ns + "event_") + 1;
    std::size_t next_entity = persisted.max_sequence(resource_ns + "entity_") + 1;

    for (IdentityCluster& cluster : out.clusters) {
        // Reuse a persisted IRI when any member carries one; the smallest
        // mapped member key decides, disagreements go to the review log.
        std::map<std::string, std::string> found;  // member key -> iri
        for (const EntityKey& m : cluster.members) {
            if (const std::string* iri = persisted.find(to_string(m))) {
                found[to_string(m)] = *iri;
            }
        }
        if (!found.empty()) {
            cluster.canonical_iri = found.begin()->second;
            std::set<std::string> distinct;
            for (const auto& [_, iri] : found) distinct.insert(iri);
            if (distinct.size() > 1) {
                review_log.push_back("cluster with member " + found.begin()->first +
                                     " spans " + std::to_string(distinct.size()) +
                                     " persisted canonical ids; kept " + cluster.canonical_iri);
            }
            continue;
        }
        cluster.canonical_iri = cluster.is_event
                                    ? resource_ns + "event_" + std::to_string(next_event++)
                                    : resource_ns + "entity_" + std::to_string(next_entity++);
    }

    out.rebuild_index();
    return out;
}

}  // namespace eventforge
