#include "eventforge/interlink.hpp"

#include <istream>

#include "eventforge/text.hpp"
#include "eventforge/tsv.hpp"

namespace eventforge {

void LinkGraph::add(const std::string& language, const std::string& from,
                    const std::string& to) {
    edges[language][from].insert(to);
}

std::size_t LinkGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& [language, per_from] : edges) {
        (void)language;
        for (const auto& [from, tos] : per_from) {
            (void)from;
            n += tos.size();
        }
    }
    return n;
}

LinkGraph load_link_graph(std::istream& in) {
    LinkGraph g;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& fields) {
        if (fields.size() != 3) {
            throw ConfigError("link graph line " + std::to_string(line_no) +
                              ": expected 3 columns (language, from, to)");
        }
        g.add(fields[0], fields[1], fields[2]);
    });
    return g;
}

std::size_t restrict_languages(LinkGraph& graph, const std::set<std::string>& languages) {
    std::size_t dropped = 0;
    for (auto it = graph.edges.begin(); it != graph.edges.end();) {
        if (languages.count(it->first)) {
            ++it;
            continue;
        }
        for (const auto& [_, tos] : it->second) dropped += tos.size();
        it = graph.edges.erase(it);
    }
    return dropped;
}

std::size_t restrict_languages(std::vector<Sentence>& corpus,
                               const std::set<std::string>& languages) {
    std::size_t before = corpus.size();
    std::erase_if(corpus, [&](const Sentence& s) { return !languages.count(s.language); });
    return before - corpus.size();
}

std::vector<Sentence> load_sentence_corpus(std::istream& in) {
    std::vector<Sentence> out;
    tsv::for_each_row(in, [&](std::size_t line_no, std::vector<std::string>&& fields) {
        if (fields.size() != 3) {
            throw ConfigError("sentence corpus line " + std::to_string(line_no) +
                              ": expected 3 columns (language, sentence id, entity ids)");
        }
        Sentence s;
        s.language = std::move(fields[0]);
        s.sentence_id = std::move(fields[1]);
        for (auto& id : text::split(fields[2], '|')) {
            if (!id.empty()) s.entities.insert(std::move(id));
        }
        out.push_back(std::move(s));
    });
    return out;
}

void attach_out_links(EntityStore& store, const LinkGraph& graph,
                      const SourceRegistry& registry) {
    for (const auto& [language, per_from] : graph.edges) {
        auto sources = registry.with_language(language);
        if (sources.empty()) continue;
        for (const auto& [from, tos] : per_from) {
            for (const DatasetDescriptor* source : sources) {
                const RawEntity* found = store.find({source->name, from});
                if (!found) continue;
                RawEntity& entity = store.get_or_create({source->name, from});
                entity.out_links[language].insert(tos.begin(), tos.end());
            }
        }
    }
}

std::int64_t total(const std::map<std::string, std::int64_t>& by_language) {
    std::int64_t sum = 0;
    for (const auto& [_, n] : by_language) sum += n;
    return sum;
}

PairCounts compute_links(const LinkGraph& graph, const std::set<std::string>& events) {
    PairCounts out;
    for (const auto& [language, per_from] : graph.edges) {
        for (const auto& [from, tos] : per_from) {
            bool from_event = events.count(from) > 0;
            for (const std::string& to : tos) {
                if (from == to) continue;
                if (!from_event && !events.count(to)) continue;
                out[{from, to}][language] += 1;
            }
        }
    }
    return out;
}

PairCounts compute_mentions(const std::vector<Sentence>& corpus,
                            const std::set<std::string>& events) {
    PairCounts out;
    for (const Sentence& s : corpus) {
        for (auto a = s.entities.begin(); a != s.entities.end(); ++a) {
            auto b = a;
            for (++b; b != s.entities.end(); ++b) {
                if (!events.count(*a) && !events.count(*b)) continue;
                out[{*a, *b}][s.language] += 1;  // *a < *b by set order
            }
        }
    }
    return out;
}

LinkGraph remap_link_graph(const LinkGraph& graph, const IdResolver& resolve) {
    LinkGraph out;
    for (const auto& [language, per_from] : graph.edges) {
        for (const auto& [from, tos] : per_from) {
            auto rfrom = resolve(language, from);
            if (!rfrom) continue;
            for (const std::string& to : tos) {
                auto rto = resolve(language, to);
                if (!rto) continue;
                out.add(language, *rfrom, *rto);
            }
        }
    }
    return out;
}

std::vector<Sentence> remap_corpus(const std::vector<Sentence>& corpus,
                                   const IdResolver& resolve) {
    std::vector<Sentence> out;
    out.reserve(corpus.size());
    for (const Sentence& s : corpus) {
        Sentence r;
        r.language = s.language;
        r.sentence_id = s.sentence_id;
        for (const std::string& id : s.entities) {
            if (auto mapped = resolve(s.language, id)) r.entities.insert(*mapped);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace eventforge
