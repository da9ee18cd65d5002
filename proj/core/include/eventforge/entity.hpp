#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "eventforge/date.hpp"
#include "eventforge/source.hpp"

namespace eventforge {

// Per-source entity record, keyed by (source, local id). Labels and
// descriptions keep the first value seen per language (later labels demote
// to aliases); all other fields are sets, so load order does not matter.
struct RawEntity {
    EntityKey key;
    std::map<std::string, std::string> labels;                    // lang -> label
    std::map<std::string, std::set<std::string>> aliases;         // lang -> aliases
    std::map<std::string, std::string> descriptions;              // lang -> description
    TemporalScope existence;
    std::set<std::string> types;                                  // class IRIs
    std::set<EntityKey> same_as;
    std::set<std::string> categories;
    std::map<std::string, std::set<std::string>> out_links;       // lang -> local ids

    void add_label(const std::string& lang, const std::string& value);
    void add_alias(const std::string& lang, const std::string& value);
    void add_description(const std::string& lang, const std::string& value);
};

class EntityStore {
public:
    RawEntity& get_or_create(const EntityKey& key);
    const RawEntity* find(const EntityKey& key) const;
    bool contains(const EntityKey& key) const { return find(key) != nullptr; }

    std::size_t size() const { return entities_.size(); }

    auto begin() const { return entities_.begin(); }
    auto end() const { return entities_.end(); }
    auto begin() { return entities_.begin(); }
    auto end() { return entities_.end(); }

private:
    std::map<EntityKey, RawEntity> entities_;
};

}  // namespace eventforge
