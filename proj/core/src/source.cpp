#include "eventforge/source.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eventforge/text.hpp"

namespace eventforge {

namespace {

// Family precedence for the default trust order.
int family_order(std::string_view name) {
    if (name == "wikidata") return 1;
    if (text::starts_with(name, "dbpedia-")) return 2;
    if (text::starts_with(name, "wikipedia-")) return 3;
    if (name == "wcep") return 4;
    if (name == "yago") return 5;
    return 6;
}

bool valid_source_name(std::string_view name) {
    if (name == "wikidata" || name == "yago" || name == "wcep") return true;
    for (std::string_view family : {std::string_view("dbpedia-"), std::string_view("wikipedia-")}) {
        if (text::starts_with(name, family) && name.size() > family.size()) return true;
    }
    return false;
}

SourceKind derived_kind(std::string_view name) {
    if (text::starts_with(name, "wikipedia-")) return SourceKind::event_list;
    if (name == "wcep") return SourceKind::current_events;
    return SourceKind::kg;
}

std::string derived_language(std::string_view name) {
    for (std::string_view family : {std::string_view("dbpedia-"), std::string_view("wikipedia-")}) {
        if (text::starts_with(name, family)) return std::string(name.substr(family.size()));
    }
    return {};
}

}  // namespace

std::string_view to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::kg: return "kg";
        case SourceKind::event_list: return "event-list";
        case SourceKind::current_events: return "current-events";
    }
    return "kg";
}

std::optional<SourceKind> source_kind_from_string(std::string_view s) {
    if (s == "kg") return SourceKind::kg;
    if (s == "event-list") return SourceKind::event_list;
    if (s == "current-events") return SourceKind::current_events;
    return std::nullopt;
}

std::string to_string(const EntityKey& key) {
    return key.source + ":" + key.local_id;
}

SourceRegistry SourceRegistry::from_specs(std::vector<SourceSpec> specs,
                                          const std::string& base_iri) {
    if (specs.empty()) throw ConfigError("no sources registered");

    std::set<std::string> names;
    bool any_rank = false, all_rank = true;
    for (const SourceSpec& s : specs) {
        if (!valid_source_name(s.name)) {
            throw ConfigError("unknown source name '" + s.name +
                              "' (expected wikidata, yago, wcep, dbpedia-<lang> or "
                              "wikipedia-<lang>)");
        }
        if (!names.insert(s.name).second) {
            throw ConfigError("duplicate source name '" + s.name + "'");
        }
        if (s.trust_rank > 0) any_rank = true;
        else all_rank = false;
    }
    if (any_rank && !all_rank) {
        throw ConfigError("trust ranks must be given for all sources or none");
    }

    std::vector<DatasetDescriptor> out;
    out.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        SourceSpec& s = specs[i];
        DatasetDescriptor d;
        d.name = s.name;
        if (!s.kind.empty()) {
            auto k = source_kind_from_string(s.kind);
            if (!k) throw ConfigError("unknown source kind '" + s.kind + "'");
            d.kind = *k;
        } else {
            d.kind = derived_kind(s.name);
        }
        d.language = (s.language.empty() || s.language == "-") ? derived_language(s.name)
                                                               : s.language;
        d.graph_iri = rdf::Iri{base_iri + "/graph/" + s.name};
        d.trust_rank = s.trust_rank;
        d.iri_prefix = s.iri_prefix == "-" ? std::string() : s.iri_prefix;
        d.path = s.path;
        d.creation_date = s.creation_date;
        out.push_back(std::move(d));
    }

    if (any_rank) {
        std::set<int> ranks;
        for (const auto& d : out) {
            if (!ranks.insert(d.trust_rank).second) {
                throw ConfigError("duplicate trust rank " + std::to_string(d.trust_rank));
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.trust_rank < b.trust_rank; });
    } else {
        // Stable sort keeps declaration order within a family.
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return family_order(a.name) < family_order(b.name);
        });
        for (std::size_t i = 0; i < out.size(); ++i) out[i].trust_rank = static_cast<int>(i + 1);
    }

    SourceRegistry reg;
    reg.ordered_ = std::move(out);
    return reg;
}

SourceRegistry SourceRegistry::from_config(const ConfigFile& cfg, const std::string& base_iri) {
    std::vector<SourceSpec> specs;
    // name kind language trust iri_prefix path [creation_date]
    for (auto& row : cfg.rows("sources", 6, 7)) {
        SourceSpec s;
        s.name = row[0];
        s.kind = row[1] == "-" ? std::string() : row[1];
        s.language = row[2];
        if (row[3] != "-") {
            try {
                s.trust_rank = std::stoi(row[3]);
            } catch (...) {
                throw ConfigError("bad trust rank '" + row[3] + "' for source " + s.name);
            }
            if (s.trust_rank < 1) throw ConfigError("trust rank must be >= 1");
        }
        s.iri_prefix = row[4];
        s.path = row[5];
        if (row.size() > 6 && row[6] != "-") {
            auto d = FlexDate::parse(row[6]);
            if (!d) throw ConfigError("bad creation date '" + row[6] + "' for source " + s.name);
            s.creation_date = d;
        }
        specs.push_back(std::move(s));
    }
    return from_specs(std::move(specs), base_iri);
}

const DatasetDescriptor* SourceRegistry::find(std::string_view name) const {
    for (const auto& d : ordered_) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

const DatasetDescriptor& SourceRegistry::require(std::string_view name) const {
    const DatasetDescriptor* d = find(name);
    if (!d) throw ConfigError("source '" + std::string(name) + "' is not registered");
    return *d;
}

int SourceRegistry::trust_rank(std::string_view name) const {
    return require(name).trust_rank;
}

std::optional<EntityKey> SourceRegistry::resolve_iri(std::string_view iri) const {
    const DatasetDescriptor* best = nullptr;
    for (const auto& d : ordered_) {
        if (d.iri_prefix.empty() || !text::starts_with(iri, d.iri_prefix)) continue;
        if (!best || d.iri_prefix.size() > best->iri_prefix.size()) best = &d;
    }
    if (!best) return std::nullopt;
    return EntityKey{best->name, std::string(iri.substr(best->iri_prefix.size()))};
}

std::string SourceRegistry::entity_iri(const EntityKey& key) const {
    const DatasetDescriptor* d = find(key.source);
    if (d && !d->iri_prefix.empty()) return d->iri_prefix + key.local_id;
    return key.local_id;
}

std::vector<const DatasetDescriptor*> SourceRegistry::with_language(
    std::string_view language) const {
    std::vector<const DatasetDescriptor*> out;
    for (const auto& d : ordered_) {
        if (d.language == language) out.push_back(&d);
    }
    return out;
}

}  // namespace eventforge
