#include "eventforge/relations.hpp"

#include <algorithm>
#include <istream>

#include "eventforge/tsv.hpp"

namespace eventforge {

std::string_view to_string(RelationCategory c) {
    switch (c) {
        case RelationCategory::plain: return "plain";
        case RelationCategory::temporal: return "temporal";
        case RelationCategory::indirect: return "indirect";
        case RelationCategory::structural: return "structural";
    }
    return "plain";
}

std::optional<RelationCategory> relation_category_from_string(std::string_view s) {
    if (s == "plain") return RelationCategory::plain;
    if (s == "temporal") return RelationCategory::temporal;
    if (s == "indirect") return RelationCategory::indirect;
    if (s == "structural") return RelationCategory::structural;
    return std::nullopt;
}

bool is_structural_role(std::string_view role_iri) {
    return role_iri == vocab::kSoHasSubEvent || role_iri == vocab::kDboPreviousEvent ||
           role_iri == vocab::kDboNextEvent || role_iri == vocab::kSoContainedInPlace;
}

std::vector<PredicateMapping> load_mapping_table(std::istream& in) {
    std::vector<PredicateMapping> out;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& fields) {
        if (fields.size() != 4) {
            throw ConfigError("mapping table line " + std::to_string(line_no) +
                              ": expected 4 columns (source, predicate, target role, guard)");
        }
        PredicateMapping m;
        m.source = fields[0];
        m.source_predicate = fields[1];
        m.target_role = fields[2];
        if (fields[3] == "none") {
            m.guard = MappingGuard::none;
        } else if (fields[3] == "both-endpoints-events") {
            m.guard = MappingGuard::both_endpoints_events;
        } else if (fields[3] == "subject-is-place") {
            m.guard = MappingGuard::subject_is_place;
        } else {
            throw ConfigError("mapping table line " + std::to_string(line_no) +
                              ": unknown guard '" + fields[3] + "'");
        }
        for (const auto& prev : out) {
            if (prev.source == m.source && prev.source_predicate == m.source_predicate) {
                throw ConfigError("mapping table line " + std::to_string(line_no) +
                                  ": duplicate mapping for (" + m.source + ", " +
                                  m.source_predicate + ")");
            }
        }
        out.push_back(std::move(m));
    });
    return out;
}

void extract_temporal_relations(std::vector<RawRelation>& relations, ExtractionLog& log) {
    for (RawRelation& r : relations) {
        if (!r.validity.has_any()) continue;
        if (!r.validity.well_ordered()) {
            log.warnings.push_back("validity end precedes begin on (" + to_string(r.subject) +
                                   ", " + r.predicate + "); scope dropped");
            r.validity = TemporalScope{};
            continue;
        }
        r.category = RelationCategory::temporal;
    }
}

void map_structural(std::vector<RawRelation>& relations,
                    const std::vector<PredicateMapping>& mapping, const EventSet& events,
                    const vocab::Schema& schema, ExtractionLog& log) {
    std::map<std::pair<std::string_view, std::string_view>, const PredicateMapping*> index;
    for (const PredicateMapping& m : mapping) {
        index[{m.source, m.source_predicate}] = &m;
    }

    const std::string sub_event_of = schema.sub_event_of();
    auto is_event = [&](const EntityKey& k) { return events.count(k) > 0; };

    // Pass 1: everything except subject-is-place guards. Collects the place
    // universe from hasPlace objects on the way.
    std::set<EntityKey> places;
    std::vector<RawRelation*> deferred;
    for (RawRelation& r : relations) {
        auto it = index.find({r.source, r.predicate});
        if (it == index.end()) continue;
        const PredicateMapping& m = *it->second;
        if (m.guard == MappingGuard::subject_is_place) {
            deferred.push_back(&r);
            continue;
        }
        if (m.guard == MappingGuard::both_endpoints_events) {
            if (!r.object_is_entity() || !is_event(r.subject) || !is_event(r.object_key())) {
                continue;
            }
        }
        std::string role = m.target_role;
        // Mapping tables may write the inverse sub-event marker as a full
        // schema IRI or as the bare token.
        if (role == sub_event_of || role == "subEventOf") {
            // Stated child -> parent; canonical form is parent hasSubEvent child.
            if (!r.object_is_entity()) continue;
            EntityKey child = r.subject;
            r.subject = r.object_key();
            r.object = child;
            role = vocab::kSoHasSubEvent;
        }
        r.role_type = role;
        if (role == vocab::kSemHasPlace && r.object_is_entity()) {
            places.insert(r.object_key());
        }
    }

    // Pass 2: subject-is-place rows. Accepting a containedInPlace row makes
    // its object a place, so iterate until the frontier stops growing.
    bool changed = true;
    while (changed) {
        changed = false;
        for (RawRelation* r : deferred) {
            if (!r->role_type.empty()) continue;
            if (!places.count(r->subject)) continue;
            auto it = index.find({r->source, r->predicate});
            r->role_type = it->second->target_role;
            if (r->object_is_entity()) places.insert(r->object_key());
            changed = true;
        }
    }
    for (RawRelation* r : deferred) {
        if (r->role_type.empty()) {
            log.warnings.push_back("mapping guard subject-is-place failed for (" +
                                   to_string(r->subject) + ", " + r->predicate + ")");
        }
    }

    for (RawRelation& r : relations) {
        if (r.category == RelationCategory::temporal) continue;
        if (!r.role_type.empty() && is_structural_role(r.role_type)) {
            r.category = RelationCategory::structural;
        }
    }
}

void extract_indirect_relations(std::vector<RawRelation>& relations, const EntityStore& store,
                                const EventSet& events) {
    auto has_existence = [&](const EntityKey& k) {
        const RawEntity* e = store.find(k);
        return e && e->existence.has_any();
    };
    for (RawRelation& r : relations) {
        if (r.category != RelationCategory::plain) continue;
        bool subject_event = events.count(r.subject) > 0;
        bool object_event = r.object_is_entity() && events.count(r.object_key()) > 0;
        if (subject_event || object_event) {
            r.category = RelationCategory::indirect;
            continue;
        }
        if (r.object_is_entity() && has_existence(r.subject) && has_existence(r.object_key())) {
            r.category = RelationCategory::indirect;
        }
    }
}

std::set<EntityKey> collect_place_keys(const std::vector<RawRelation>& relations) {
    std::set<EntityKey> out;
    for (const RawRelation& r : relations) {
        if (r.role_type == vocab::kSemHasPlace && r.object_is_entity()) {
            out.insert(r.object_key());
        }
        if (r.role_type == vocab::kSoContainedInPlace) {
            out.insert(r.subject);
            if (r.object_is_entity()) out.insert(r.object_key());
        }
    }
    return out;
}

}  // namespace eventforge
