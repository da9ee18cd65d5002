#include "eventforge/fuse.hpp"

#include <algorithm>
#include <istream>

#include "eventforge/tsv.hpp"

namespace eventforge {

std::optional<FlexDate> fuse_time(const std::vector<TimeCandidate>& candidates,
                                  TimePosition position, const SourceRegistry& trust) {
    std::vector<const TimeCandidate*> pool;
    for (const TimeCandidate& c : candidates) {
        if (c.position == position) pool.push_back(&c);
    }
    if (pool.empty()) return std::nullopt;

    // (i) boundary dates lose against any non-boundary alternative.
    auto is_boundary = [&](const FlexDate& d) {
        return position == TimePosition::begin ? d.is_begin_boundary() : d.is_end_boundary();
    };
    bool any_solid = std::any_of(pool.begin(), pool.end(),
                                 [&](const TimeCandidate* c) { return !is_boundary(c->value); });
    if (any_solid) {
        std::erase_if(pool, [&](const TimeCandidate* c) { return is_boundary(c->value); });
    }

    // (ii) strict plurality over exact values (granularity included).
    // Sources vote: a source repeating the same value counts once.
    std::set<std::pair<FlexDate, std::string>> votes;
    for (const TimeCandidate* c : pool) votes.insert({c->value, c->source});
    std::map<FlexDate, std::size_t> groups;
    for (const auto& [value, _] : votes) ++groups[value];
    const FlexDate* plurality = nullptr;
    std::size_t best = 0;
    bool unique = false;
    for (const auto& [value, n] : groups) {
        if (n > best) {
            best = n;
            plurality = &value;
            unique = true;
        } else if (n == best) {
            unique = false;
        }
    }
    if (unique && plurality) return *plurality;

    // (iii) the most-trusted source decides; a source backing several
    // values (unusual) resolves to the smallest one.
    int best_rank = 0;
    const FlexDate* chosen = nullptr;
    for (const TimeCandidate* c : pool) {
        int rank = trust.trust_rank(c->source);
        if (!chosen || rank < best_rank || (rank == best_rank && c->value < *chosen)) {
            best_rank = rank;
            chosen = &c->value;
        }
    }
    return *chosen;
}

void PlaceHierarchy::add(const std::string& place, const std::string& container) {
    parents[place].insert(container);
}

PlaceHierarchy PlaceHierarchy::acyclic(const PlaceHierarchy& raw,
                                       std::vector<std::string>& warnings) {
    PlaceHierarchy out;
    enum class Mark { unseen, active, done };
    std::map<std::string, Mark> marks;

    // Iterative DFS in sorted node order; edges into the active stack close
    // a cycle and are skipped.
    struct Frame {
        std::string node;
        std::vector<std::string> parents;
        std::size_t next = 0;
    };
    auto sorted_parents = [&](const std::string& node) {
        std::vector<std::string> ps;
        auto it = raw.parents.find(node);
        if (it != raw.parents.end()) ps.assign(it->second.begin(), it->second.end());
        return ps;
    };

    for (const auto& [start, _] : raw.parents) {
        if (marks[start] != Mark::unseen) continue;
        std::vector<Frame> stack;
        stack.push_back({start, sorted_parents(start), 0});
        marks[start] = Mark::active;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next >= f.parents.size()) {
                marks[f.node] = Mark::done;
                stack.pop_back();
                continue;
            }
            const std::string parent = f.parents[f.next++];
            Mark m = marks[parent];
            if (m == Mark::active) {
                warnings.push_back("containedInPlace cycle: dropped edge " + f.node + " -> " +
                                   parent);
                continue;
            }
            out.add(f.node, parent);
            if (m == Mark::unseen) {
                marks[parent] = Mark::active;
                stack.push_back({parent, sorted_parents(parent), 0});
            }
        }
    }
    return out;
}

std::set<std::string> PlaceHierarchy::ancestors(const std::string& place) const {
    std::set<std::string> out;
    std::vector<const std::string*> stack{&place};
    while (!stack.empty()) {
        const std::string* cur = stack.back();
        stack.pop_back();
        auto it = parents.find(*cur);
        if (it == parents.end()) continue;
        for (const std::string& p : it->second) {
            if (out.insert(p).second) stack.push_back(&p);
        }
    }
    return out;
}

std::set<std::string> fuse_locations(const std::set<std::string>& locations,
                                     const PlaceHierarchy& hierarchy) {
    // Everything that transitively contains another member goes.
    std::set<std::string> contained_ancestors;
    for (const std::string& loc : locations) {
        for (const std::string& anc : hierarchy.ancestors(loc)) {
            if (anc != loc && locations.count(anc)) contained_ancestors.insert(anc);
        }
    }
    std::set<std::string> out;
    for (const std::string& loc : locations) {
        if (!contained_ancestors.count(loc)) out.insert(loc);
    }
    return out;
}

TypeAlignment TypeAlignment::load(std::istream& in) {
    TypeAlignment a;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& fields) {
        if (fields.size() != 3) {
            throw ConfigError("type alignment line " + std::to_string(line_no) +
                              ": expected 3 columns (source, source type, target type)");
        }
        a.to_target[{fields[0], fields[1]}] = fields[2];
    });
    return a;
}

TypeFusion fuse_types(const IdentityCluster& cluster, const EntityStore& store,
                      const TypeAlignment& alignment) {
    TypeFusion out;
    for (const EntityKey& m : cluster.members) {
        const RawEntity* entity = store.find(m);
        if (!entity) continue;
        for (const std::string& type : entity->types) {
            auto it = alignment.to_target.find({m.source, type});
            if (it != alignment.to_target.end()) {
                out.types.insert(it->second);
            } else {
                ++out.unaligned;
            }
        }
    }
    return out;
}

FusedText fuse_text(const IdentityCluster& cluster, const EntityStore& store,
                    const std::vector<ListEventRecord>& records, const SourceRegistry& trust) {
    FusedText out;

    // Members in trust order, then by key for same-source determinism.
    std::vector<const RawEntity*> members;
    for (const EntityKey& m : cluster.members) {
        if (const RawEntity* e = store.find(m)) members.push_back(e);
    }
    std::sort(members.begin(), members.end(), [&](const RawEntity* a, const RawEntity* b) {
        int ra = trust.trust_rank(a->key.source), rb = trust.trust_rank(b->key.source);
        if (ra != rb) return ra < rb;
        return a->key < b->key;
    });

    for (const RawEntity* e : members) {
        for (const auto& [lang, label] : e->labels) {
            auto [it, inserted] = out.labels.emplace(lang, label);
            if (!inserted && it->second != label) out.aliases[lang].insert(label);
        }
        for (const auto& [lang, aliases] : e->aliases) {
            for (const std::string& a : aliases) {
                if (!out.labels.count(lang) || out.labels[lang] != a) {
                    out.aliases[lang].insert(a);
                }
            }
        }
        for (const auto& [lang, description] : e->descriptions) {
            out.descriptions[lang].insert(description);
        }
    }

    // List rows contribute their description text.
    for (std::size_t row : cluster.list_record_rows) {
        if (row >= records.size()) continue;
        const ListEventRecord& rec = records[row];
        out.descriptions[rec.language].insert(rec.description);
    }
    return out;
}

FusedView fuse_cluster(const IdentityCluster& cluster, const EntityStore& store,
                       const std::vector<ListEventRecord>& records,
                       const std::set<std::string>& member_locations,
                       const PlaceHierarchy& hierarchy, const TypeAlignment& alignment,
                       const SourceRegistry& trust) {
    FusedView view;

    std::vector<TimeCandidate> candidates;
    for (const EntityKey& m : cluster.members) {
        const RawEntity* e = store.find(m);
        if (!e) continue;
        TemporalScope& per_source = view.per_source_scope[m.source];
        if (e->existence.begin) {
            candidates.push_back({*e->existence.begin, m.source, TimePosition::begin});
            if (!per_source.begin || *e->existence.begin < *per_source.begin) {
                per_source.begin = e->existence.begin;
            }
        }
        if (e->existence.end) {
            candidates.push_back({*e->existence.end, m.source, TimePosition::end});
            if (!per_source.end || *e->existence.end > *per_source.end) {
                per_source.end = e->existence.end;
            }
        }
    }
    for (std::size_t row : cluster.list_record_rows) {
        if (row >= records.size()) continue;
        const ListEventRecord& rec = records[row];
        TemporalScope& per_source = view.per_source_scope[rec.source];
        if (rec.date.begin) {
            candidates.push_back({*rec.date.begin, rec.source, TimePosition::begin});
            if (!per_source.begin || *rec.date.begin < *per_source.begin) {
                per_source.begin = rec.date.begin;
            }
        }
        if (rec.date.end) {
            candidates.push_back({*rec.date.end, rec.source, TimePosition::end});
            if (!per_source.end || *rec.date.end > *per_source.end) {
                per_source.end = rec.date.end;
            }
        }
    }

    view.scope.begin = fuse_time(candidates, TimePosition::begin, trust);
    view.scope.end = fuse_time(candidates, TimePosition::end, trust);
    if (!view.scope.well_ordered()) {
        // Fused begin/end may come from disagreeing sources; drop the end.
        view.scope.end.reset();
    }
    view.locations = fuse_locations(member_locations, hierarchy);
    view.types = fuse_types(cluster, store, alignment);
    view.text = fuse_text(cluster, store, records, trust);
    return view;
}

std::vector<FusedRelation> fuse_relations(const std::vector<RawRelation>& relations,
                                          const ClusterSet& clusters,
                                          const SourceRegistry& trust, std::size_t& dropped) {
    struct Key {
        std::string subject;
        std::string predicate;
        std::variant<std::string, rdf::Literal> object;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, FusedRelation> groups;
    std::map<Key, std::vector<TimeCandidate>> candidates;

    for (const RawRelation& r : relations) {
        const IdentityCluster* subject = clusters.find(r.subject);
        if (!subject) {
            ++dropped;
            continue;
        }
        Key key;
        key.subject = subject->canonical_iri;
        key.predicate = r.role_type.empty() ? r.predicate : r.role_type;
        if (r.object_is_entity()) {
            const IdentityCluster* object = clusters.find(r.object_key());
            if (!object) {
                ++dropped;
                continue;
            }
            key.object = object->canonical_iri;
        } else {
            key.object = std::get<rdf::Literal>(r.object);
        }

        FusedRelation& g = groups[key];
        if (g.sources.empty()) {
            g.subject_iri = key.subject;
            g.predicate = key.predicate;
            g.object = key.object;
        }
        g.sources.insert(r.source);
        TemporalScope& per_source = g.per_source[r.source];
        if (r.validity.begin) {
            candidates[key].push_back({*r.validity.begin, r.source, TimePosition::begin});
            if (!per_source.begin || *r.validity.begin < *per_source.begin) {
                per_source.begin = r.validity.begin;
            }
        }
        if (r.validity.end) {
            candidates[key].push_back({*r.validity.end, r.source, TimePosition::end});
            if (!per_source.end || *r.validity.end > *per_source.end) {
                per_source.end = r.validity.end;
            }
        }
        // Category: keep the strongest claim across sources.
        auto strength = [](RelationCategory c) {
            switch (c) {
                case RelationCategory::temporal: return 3;
                case RelationCategory::structural: return 2;
                case RelationCategory::indirect: return 1;
                case RelationCategory::plain: return 0;
            }
            return 0;
        };
        if (strength(r.category) > strength(g.category)) g.category = r.category;
    }

    std::vector<FusedRelation> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) {
        auto it = candidates.find(key);
        if (it != candidates.end()) {
            g.fused_validity.begin = fuse_time(it->second, TimePosition::begin, trust);
            g.fused_validity.end = fuse_time(it->second, TimePosition::end, trust);
            if (!g.fused_validity.well_ordered()) g.fused_validity.end.reset();
        }
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace eventforge
