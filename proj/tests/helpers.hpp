#pragma once

// Shared test utilities: deterministic random generators for RDF terms and
// small graphs, plus fixture path lookup.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eventforge/rdf.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& rel) {
    return std::string(EVENTFORGE_FIXTURE_DIR) + "/" + rel;
}

class RandomRdf {
public:
    explicit RandomRdf(std::uint32_t seed) : rng_(seed) {}

    std::mt19937& rng() { return rng_; }

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    std::string iri_string() {
        static const char* hosts[] = {"example.org", "data.test", "kg.local"};
        std::string s = "http://";
        s += hosts[uniform(0, 2)];
        s += "/";
        int len = uniform(1, 12);
        static const char alphabet[] =
            "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-./%#?=&";
        for (int i = 0; i < len; ++i) {
            s += alphabet[uniform(0, static_cast<int>(sizeof(alphabet) - 2))];
        }
        return s;
    }

    eventforge::rdf::Iri iri() { return eventforge::rdf::Iri{iri_string()}; }

    std::string lexical() {
        std::string s;
        int len = uniform(0, 24);
        for (int i = 0; i < len; ++i) {
            switch (uniform(0, 11)) {
                case 0: s += '"'; break;
                case 1: s += '\\'; break;
                case 2: s += '\n'; break;
                case 3: s += '\t'; break;
                case 4: s += '\r'; break;
                case 5: s += "\xC3\xA9"; break;        // é
                case 6: s += "\xD0\xB6"; break;        // ж
                case 7: s += "\xE2\x82\xAC"; break;    // €
                case 8: s += static_cast<char>(uniform(1, 0x1F)); break;
                default: s += static_cast<char>(uniform(' ', '~'));
            }
        }
        return s;
    }

    eventforge::rdf::Literal literal() {
        using namespace eventforge::rdf;
        switch (uniform(0, 2)) {
            case 0: return plain_literal(lexical());
            case 1: {
                static const char* tags[] = {"en", "de", "fr", "ru", "pt-BR", "en-GB"};
                return lang_literal(lexical(), tags[uniform(0, 5)]);
            }
            default: return typed_literal(lexical(), iri_string());
        }
    }

    eventforge::rdf::Term subject() {
        return eventforge::rdf::Term{iri()};
    }

    eventforge::rdf::Term object() {
        if (uniform(0, 2) == 0) return eventforge::rdf::Term{literal()};
        return eventforge::rdf::Term{iri()};
    }

    eventforge::rdf::Quad quad() {
        eventforge::rdf::Quad q;
        q.triple.subject = subject();
        q.triple.predicate = iri();
        q.triple.object = object();
        q.graph = iri();
        return q;
    }

private:
    std::mt19937 rng_;
};

}  // namespace testutil
