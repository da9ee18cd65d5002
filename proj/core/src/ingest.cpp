#include "eventforge/ingest.hpp"

#include <istream>

#include "eventforge/ntriples.hpp"
#include "eventforge/text.hpp"

namespace eventforge {

std::optional<PropertyMap::Role> PropertyMap::role_from_string(std::string_view s) {
    if (s == "label") return Role::label;
    if (s == "alias") return Role::alias;
    if (s == "description") return Role::description;
    if (s == "type") return Role::type;
    if (s == "subclass") return Role::subclass;
    if (s == "begin") return Role::begin;
    if (s == "end") return Role::end;
    if (s == "same-as") return Role::same_as;
    if (s == "category") return Role::category;
    if (s == "statement-value") return Role::statement_value;
    if (s == "validity-begin") return Role::validity_begin;
    if (s == "validity-end") return Role::validity_end;
    return std::nullopt;
}

std::string_view PropertyMap::to_string(Role role) {
    switch (role) {
        case Role::label: return "label";
        case Role::alias: return "alias";
        case Role::description: return "description";
        case Role::type: return "type";
        case Role::subclass: return "subclass";
        case Role::begin: return "begin";
        case Role::end: return "end";
        case Role::same_as: return "same-as";
        case Role::category: return "category";
        case Role::statement_value: return "statement-value";
        case Role::validity_begin: return "validity-begin";
        case Role::validity_end: return "validity-end";
    }
    return "label";
}

void PropertyMap::add(const std::string& source, Role role, const std::string& predicate_iri) {
    by_predicate_[{source, predicate_iri}] = role;
}

std::optional<PropertyMap::Role> PropertyMap::role(const std::string& source,
                                                   const std::string& predicate_iri) const {
    auto it = by_predicate_.find({source, predicate_iri});
    if (it == by_predicate_.end()) return std::nullopt;
    return it->second;
}

PropertyMap PropertyMap::from_config(const ConfigFile& cfg) {
    PropertyMap map;
    for (auto& row : cfg.rows("property-map", 3)) {
        auto role = role_from_string(row[1]);
        if (!role) {
            throw ConfigError("unknown property-map role '" + row[1] + "' for source " + row[0]);
        }
        map.add(row[0], *role, row[2]);
    }
    return map;
}

namespace {

// Key for statement-node bookkeeping: IRI value or "_:" label.
std::optional<std::string> node_key(const rdf::Term& t) {
    if (rdf::is_iri(t)) return rdf::as_iri(t).value;
    if (rdf::is_blank(t)) return "_:" + std::get<rdf::BlankNode>(t).label;
    return std::nullopt;
}

struct PendingStatement {
    std::optional<rdf::Term> value;
    TemporalScope validity;
    bool referenced = false;
};

std::string category_string(const rdf::Term& object) {
    if (rdf::is_literal(object)) return rdf::as_literal(object).lexical;
    if (rdf::is_iri(object)) {
        std::string_view v = rdf::as_iri(object).value;
        std::size_t cut = v.find_last_of("/#");
        std::string tail(cut == std::string_view::npos ? v : v.substr(cut + 1));
        if (text::starts_with(tail, "Category:")) tail = tail.substr(9);
        for (char& c : tail) {
            if (c == '_') c = ' ';
        }
        return tail;
    }
    return {};
}

}  // namespace

KgLoadResult load_kg_dump(const DatasetDescriptor& source, std::istream& dump,
                          const PropertyMap& map, const SourceRegistry& registry,
                          EntityStore& store) {
    KgLoadResult result;

    auto warn = [&](std::string msg) {
        result.warnings.push_back("[" + source.name + "] " + std::move(msg));
    };

    // Maps a term to the entity key it denotes. Own-prefix IRIs become local
    // ids; other registered prefixes resolve cross-source; anything else
    // keeps the full IRI as the local id.
    auto term_key = [&](const rdf::Term& t) -> EntityKey {
        if (rdf::is_blank(t)) return EntityKey{source.name, "_:" + std::get<rdf::BlankNode>(t).label};
        const std::string& iri = rdf::as_iri(t).value;
        if (!source.iri_prefix.empty() && text::starts_with(iri, source.iri_prefix)) {
            return EntityKey{source.name, iri.substr(source.iri_prefix.size())};
        }
        if (auto k = registry.resolve_iri(iri)) return *k;
        return EntityKey{source.name, iri};
    };

    auto literal_language = [&](const rdf::Literal& lit) {
        if (!lit.language.empty()) return lit.language;
        return source.language;
    };

    std::map<std::string, PendingStatement> statements;
    struct PendingRelation {
        rdf::Term subject;
        std::string predicate;
        rdf::Term object;
    };
    std::vector<PendingRelation> pending;
    std::set<std::string> subject_keys;

    auto on_triple = [&](std::size_t line_no, rdf::Triple&& t) {
        ++result.triples;
        auto skey = node_key(t.subject);
        auto role = map.role(source.name, t.predicate.value);

        if (role == PropertyMap::Role::statement_value) {
            if (skey) statements[*skey].value = t.object;
            return;
        }
        if (role == PropertyMap::Role::validity_begin || role == PropertyMap::Role::validity_end) {
            if (!skey) return;
            if (!rdf::is_literal(t.object)) {
                warn("line " + std::to_string(line_no) + ": validity qualifier is not a literal");
                return;
            }
            auto d = FlexDate::from_literal(rdf::as_literal(t.object));
            if (!d) {
                warn("line " + std::to_string(line_no) + ": unparseable validity timestamp \"" +
                     rdf::as_literal(t.object).lexical + "\"");
                return;
            }
            if (role == PropertyMap::Role::validity_begin) {
                statements[*skey].validity.begin = d;
            } else {
                statements[*skey].validity.end = d;
            }
            return;
        }

        if (skey) subject_keys.insert(*skey);

        if (!role) {
            pending.push_back({std::move(t.subject), std::move(t.predicate.value),
                               std::move(t.object)});
            return;
        }

        RawEntity& entity = store.get_or_create(term_key(t.subject));
        switch (*role) {
            case PropertyMap::Role::label:
                if (rdf::is_literal(t.object)) {
                    const auto& lit = rdf::as_literal(t.object);
                    entity.add_label(literal_language(lit), lit.lexical);
                }
                break;
            case PropertyMap::Role::alias:
                if (rdf::is_literal(t.object)) {
                    const auto& lit = rdf::as_literal(t.object);
                    entity.add_alias(literal_language(lit), lit.lexical);
                }
                break;
            case PropertyMap::Role::description:
                if (rdf::is_literal(t.object)) {
                    const auto& lit = rdf::as_literal(t.object);
                    entity.add_description(literal_language(lit), lit.lexical);
                }
                break;
            case PropertyMap::Role::type:
                if (rdf::is_iri(t.object)) entity.types.insert(rdf::as_iri(t.object).value);
                break;
            case PropertyMap::Role::subclass:
                if (rdf::is_iri(t.subject) && rdf::is_iri(t.object)) {
                    result.subclass_edges.emplace_back(rdf::as_iri(t.subject).value,
                                                       rdf::as_iri(t.object).value);
                }
                break;
            case PropertyMap::Role::begin:
            case PropertyMap::Role::end: {
                if (!rdf::is_literal(t.object)) break;
                auto d = FlexDate::from_literal(rdf::as_literal(t.object));
                if (!d) {
                    warn("line " + std::to_string(line_no) + ": unparseable timestamp \"" +
                         rdf::as_literal(t.object).lexical + "\" for " +
                         to_string(entity.key));
                    break;
                }
                // Several stamps on one entity keep the widest interval.
                if (*role == PropertyMap::Role::begin) {
                    if (!entity.existence.begin || *d < *entity.existence.begin) {
                        entity.existence.begin = d;
                    }
                } else {
                    if (!entity.existence.end || *d > *entity.existence.end) {
                        entity.existence.end = d;
                    }
                }
                break;
            }
            case PropertyMap::Role::same_as: {
                if (!rdf::is_iri(t.object)) break;
                const std::string& iri = rdf::as_iri(t.object).value;
                auto k = registry.resolve_iri(iri);
                if (!k && !source.iri_prefix.empty() &&
                    text::starts_with(iri, source.iri_prefix)) {
                    k = EntityKey{source.name, iri.substr(source.iri_prefix.size())};
                }
                if (!k) {
                    warn("line " + std::to_string(line_no) +
                         ": sameAs target outside registered namespaces: " + iri);
                    break;
                }
                if (*k != entity.key) entity.same_as.insert(std::move(*k));
                break;
            }
            case PropertyMap::Role::category: {
                std::string category = category_string(t.object);
                if (!category.empty()) entity.categories.insert(std::move(category));
                break;
            }
            default:
                break;
        }
    };

    rdf::ParserStats stats = rdf::parse_ntriples(
        dump, on_triple,
        [&](const rdf::ParseError& e) {
            warn("parse error at line " + std::to_string(e.line) + ": " + e.message);
        });
    result.parse_errors = stats.errors;

    // Resolve pending relations; relations pointing at a statement node take
    // its value and validity.
    for (PendingRelation& p : pending) {
        RawRelation r;
        r.source = source.name;
        r.subject = term_key(p.subject);
        r.predicate = std::move(p.predicate);

        const rdf::Term* object = &p.object;
        if (auto okey = node_key(p.object)) {
            auto it = statements.find(*okey);
            if (it != statements.end()) {
                it->second.referenced = true;
                if (!it->second.value) {
                    warn("statement node " + *okey + " has qualifiers but no value; dropped");
                    continue;
                }
                object = &*it->second.value;
                r.validity = it->second.validity;
            }
        }
        if (rdf::is_literal(*object)) {
            r.object = rdf::as_literal(*object);
        } else {
            EntityKey okey = term_key(*object);
            store.get_or_create(okey);
            r.object = std::move(okey);
        }
        store.get_or_create(r.subject);
        result.relations.push_back(std::move(r));
    }

    for (const auto& [key, st] : statements) {
        if (!st.referenced) {
            warn("unreferenced statement node " + key);
        }
        subject_keys.erase(key);
    }
    result.subjects = subject_keys.size();

    // A source stating end < begin is inconsistent; drop the whole scope.
    for (auto& [key, entity] : store) {
        if (key.source != source.name) continue;
        if (!entity.existence.well_ordered()) {
            warn("existence end precedes begin for " + to_string(key) + "; scope dropped");
            entity.existence = TemporalScope{};
        }
    }

    return result;
}

}  // namespace eventforge
