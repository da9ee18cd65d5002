#include "eventforge/identify.hpp"

#include <deque>

namespace eventforge {

std::string_view to_string(EvidenceKind kind) {
    switch (kind) {
        case EvidenceKind::class_instance: return "class-instance";
        case EvidenceKind::same_as_propagation: return "same-as-propagation";
        case EvidenceKind::category_regex: return "category-regex";
        case EvidenceKind::event_list: return "event-list";
        case EvidenceKind::current_events: return "current-events";
    }
    return "class-instance";
}

std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s) {
    if (s == "class-instance") return EvidenceKind::class_instance;
    if (s == "same-as-propagation") return EvidenceKind::same_as_propagation;
    if (s == "category-regex") return EvidenceKind::category_regex;
    if (s == "event-list") return EvidenceKind::event_list;
    if (s == "current-events") return EvidenceKind::current_events;
    return std::nullopt;
}

std::set<std::string> collect_event_classes(
    const std::vector<std::pair<std::string, std::string>>& subclass_edges,
    const std::set<std::string>& roots, const std::set<std::string>& blacklist) {
    std::map<std::string, std::vector<std::string>> children;  // parent -> subclasses
    for (const auto& [child, parent] : subclass_edges) {
        children[parent].push_back(child);
    }

    std::set<std::string> visited;
    std::deque<std::string> queue;
    for (const std::string& root : roots) {
        if (blacklist.count(root)) continue;
        if (visited.insert(root).second) queue.push_back(root);
    }
    while (!queue.empty()) {
        std::string cls = std::move(queue.front());
        queue.pop_front();
        auto it = children.find(cls);
        if (it == children.end()) continue;
        for (const std::string& sub : it->second) {
            if (blacklist.count(sub)) continue;
            if (visited.insert(sub).second) queue.push_back(sub);
        }
    }
    return visited;
}

void identify_by_class(const EntityStore& store, const std::set<std::string>& event_classes,
                       KgEventCandidates& candidates) {
    for (const auto& [key, entity] : store) {
        for (const std::string& type : entity.types) {
            if (event_classes.count(type)) {
                candidates[key].push_back({EvidenceKind::class_instance, type});
            }
        }
    }
}

void CategoryRegexTable::add(const std::string& language, const std::string& pattern) {
    try {
        std::regex re(pattern, std::regex::ECMAScript);
        patterns_[language] = {pattern, std::move(re)};
    } catch (const std::regex_error& e) {
        throw ConfigError("invalid category regex for language '" + language + "': " + pattern +
                          " (" + e.what() + ")");
    }
}

CategoryRegexTable CategoryRegexTable::defaults() {
    CategoryRegexTable t;
    t.add("en", ".* events$");
    t.add("de", "^Ereignisse .*");
    t.add("fr", "^États ou événements .*|^Événements .*");
    t.add("ru", "^События .*");
    t.add("pt", "^Eventos .*");
    return t;
}

CategoryRegexTable CategoryRegexTable::from_config(const ConfigFile& cfg) {
    CategoryRegexTable t = defaults();
    for (auto& row : cfg.rows("category-regex", 2)) {
        t.add(row[0], row[1]);
    }
    return t;
}

const std::string* CategoryRegexTable::pattern_text(const std::string& language) const {
    auto it = patterns_.find(language);
    return it == patterns_.end() ? nullptr : &it->second.first;
}

std::optional<std::string> CategoryRegexTable::match(const RawEntity& entity,
                                                     const std::string& source_language) const {
    auto try_language = [&](const std::string& lang) -> std::optional<std::string> {
        auto it = patterns_.find(lang);
        if (it == patterns_.end()) return std::nullopt;
        for (const std::string& category : entity.categories) {
            if (std::regex_match(category, it->second.second)) return category;
        }
        return std::nullopt;
    };

    if (!source_language.empty()) return try_language(source_language);
    // Language-less sources (wikidata, yago) probe every configured pattern.
    for (const auto& [lang, _] : patterns_) {
        if (auto m = try_language(lang)) return m;
    }
    return std::nullopt;
}

void identify_by_category(const EntityStore& store, const CategoryRegexTable& table,
                          const SourceRegistry& registry, KgEventCandidates& candidates) {
    if (table.empty()) return;
    for (const auto& [key, entity] : store) {
        if (entity.categories.empty()) continue;
        const DatasetDescriptor* source = registry.find(key.source);
        std::string language = source ? source->language : std::string();
        if (auto matched = table.match(entity, language)) {
            candidates[key].push_back({EvidenceKind::category_regex, *matched});
        }
    }
}

std::vector<std::pair<EntityKey, EntityKey>> collect_same_as_links(const EntityStore& store) {
    std::vector<std::pair<EntityKey, EntityKey>> links;
    for (const auto& [key, entity] : store) {
        for (const EntityKey& other : entity.same_as) {
            links.emplace_back(key, other);
        }
    }
    return links;
}

void propagate_same_as(KgEventCandidates& candidates,
                       const std::vector<std::pair<EntityKey, EntityKey>>& same_as_links) {
    // Union-find over every key the links mention.
    std::map<EntityKey, EntityKey> parent;
    auto find = [&](EntityKey k) {
        while (true) {
            auto it = parent.find(k);
            if (it == parent.end() || it->second == k) return k;
            k = it->second;
        }
    };
    auto unite = [&](const EntityKey& a, const EntityKey& b) {
        EntityKey ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
        parent.try_emplace(ra, ra);
    };
    for (const auto& [a, b] : same_as_links) unite(a, b);

    // Smallest candidate key per component, for stable evidence details.
    std::map<EntityKey, EntityKey> component_seed;
    for (const auto& [key, _] : candidates) {
        EntityKey root = find(key);
        auto it = component_seed.find(root);
        if (it == component_seed.end() || key < it->second) component_seed[root] = key;
    }

    std::set<EntityKey> universe;
    for (const auto& [a, b] : same_as_links) {
        universe.insert(a);
        universe.insert(b);
    }
    for (const EntityKey& key : universe) {
        if (candidates.count(key)) continue;
        auto seed = component_seed.find(find(key));
        if (seed == component_seed.end()) continue;
        candidates[key].push_back(
            {EvidenceKind::same_as_propagation, to_string(seed->second)});
    }
}

std::vector<ListEventCandidate> promote_list_events(const std::vector<ListEventRecord>& records,
                                                    const SourceRegistry& registry) {
    std::vector<ListEventCandidate> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ListEventRecord& rec = records[i];
        const DatasetDescriptor* source = registry.find(rec.source);
        EvidenceKind kind = source && source->kind == SourceKind::current_events
                                ? EvidenceKind::current_events
                                : EvidenceKind::event_list;
        ListEventCandidate c;
        c.record_index = i;
        c.evidence = {kind, rec.list_page};
        c.extracted_from = rec.url.empty() ? rec.list_page : rec.url;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace eventforge
