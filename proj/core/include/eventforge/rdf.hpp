#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>

namespace eventforge::rdf {

// Absolute IRI. Values never contain unescaped '<', '>', '"', whitespace or
// control characters; is_valid_iri checks exactly that.
struct Iri {
    std::string value;

    Iri() = default;
    explicit Iri(std::string v) : value(std::move(v)) {}

    friend auto operator<=>(const Iri&, const Iri&) = default;
};

bool is_valid_iri(std::string_view value);

// Literal with optional datatype or language tag (mutually exclusive).
// Language tags are stored lowercase.
struct Literal {
    std::string lexical;
    std::string datatype;  // IRI string; empty when untyped
    std::string language;  // lowercase BCP-47 tag; empty when untagged

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct BlankNode {
    std::string label;

    friend auto operator<=>(const BlankNode&, const BlankNode&) = default;
};

using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }
inline const Literal& as_literal(const Term& t) { return std::get<Literal>(t); }

Literal plain_literal(std::string lexical);
Literal lang_literal(std::string lexical, std::string_view language);
Literal typed_literal(std::string lexical, std::string datatype_iri);

// Subject is an Iri or BlankNode, never a Literal.
struct Triple {
    Term subject;
    Iri predicate;
    Term object;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct Quad {
    Triple triple;
    Iri graph;

    friend auto operator<=>(const Quad&, const Quad&) = default;
};

inline Quad make_quad(Term subject, Iri predicate, Term object, Iri graph) {
    return Quad{Triple{std::move(subject), std::move(predicate), std::move(object)},
                std::move(graph)};
}

}  // namespace eventforge::rdf
