#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "eventforge/entity.hpp"
#include "eventforge/source.hpp"

namespace eventforge {

// Directed article-link graph per language. Duplicate rows collapse, so an
// article linking the same target twice counts once.
struct LinkGraph {
    // language -> from id -> to ids
    std::map<std::string, std::map<std::string, std::set<std::string>>> edges;

    void add(const std::string& language, const std::string& from, const std::string& to);
    std::size_t edge_count() const;
};

// TSV columns: language, from_id, to_id.
LinkGraph load_link_graph(std::istream& in);

struct Sentence {
    std::string language;
    std::string sentence_id;
    std::set<std::string> entities;
};

// Drops graph edges / sentence entries outside the configured language
// set; returns how many entries were dropped.
std::size_t restrict_languages(LinkGraph& graph, const std::set<std::string>& languages);
std::size_t restrict_languages(std::vector<Sentence>& corpus,
                               const std::set<std::string>& languages);

// TSV columns: language, sentence_id, entity_ids (|-separated).
std::vector<Sentence> load_sentence_corpus(std::istream& in);

// Attaches out-links onto entities of sources with the matching language.
void attach_out_links(EntityStore& store, const LinkGraph& graph,
                      const SourceRegistry& registry);

using PairKey = std::pair<std::string, std::string>;
// pair -> language -> count
using PairCounts = std::map<PairKey, std::map<std::string, std::int64_t>>;

std::int64_t total(const std::map<std::string, std::int64_t>& by_language);

// Directed link counts for pairs with at least one event endpoint:
// links(a->b) per language is 1 when a's article links b's (article-level),
// and the total sums over languages.
PairCounts compute_links(const LinkGraph& graph, const std::set<std::string>& events);

// Symmetric joint-mention counts for pairs with at least one event
// endpoint; keys are ordered (min, max) and self-pairs are dropped.
PairCounts compute_mentions(const std::vector<Sentence>& corpus,
                            const std::set<std::string>& events);

// Rewrites graph/corpus ids (e.g. article titles into canonical cluster
// IRIs). Ids the resolver cannot map are dropped.
using IdResolver = std::function<std::optional<std::string>(const std::string& language,
                                                            const std::string& id)>;
LinkGraph remap_link_graph(const LinkGraph& graph, const IdResolver& resolve);
std::vector<Sentence> remap_corpus(const std::vector<Sentence>& corpus,
                                   const IdResolver& resolve);

}  // namespace eventforge
