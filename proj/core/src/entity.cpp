#include "eventforge/entity.hpp"

namespace eventforge {

void RawEntity::add_label(const std::string& lang, const std::string& value) {
    auto [it, inserted] = labels.emplace(lang, value);
    if (!inserted && it->second != value) aliases[lang].insert(value);
}

void RawEntity::add_alias(const std::string& lang, const std::string& value) {
    aliases[lang].insert(value);
}

void RawEntity::add_description(const std::string& lang, const std::string& value) {
    descriptions.emplace(lang, value);
}

RawEntity& EntityStore::get_or_create(const EntityKey& key) {
    auto it = entities_.find(key);
    if (it == entities_.end()) {
        it = entities_.emplace(key, RawEntity{}).first;
        it->second.key = key;
    }
    return it->second;
}

const RawEntity* EntityStore::find(const EntityKey& key) const {
    auto it = entities_.find(key);
    return it == entities_.end() ? nullptr : &it->second;
}

}  // namespace eventforge
