#include "eventforge/rdf.hpp"

#include "eventforge/text.hpp"

namespace eventforge::rdf {

bool is_valid_iri(std::string_view value) {
    if (value.empty()) return false;
    for (unsigned char c : value) {
        if (c <= 0x20 || c == 0x7F) return false;
        if (c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
            c == '|' || c == '^' || c == '`' || c == '\\') {
            return false;
        }
    }
    return true;
}

Literal plain_literal(std::string lexical) {
    Literal l;
    l.lexical = std::move(lexical);
    return l;
}

Literal lang_literal(std::string lexical, std::string_view language) {
    Literal l;
    l.lexical = std::move(lexical);
    l.language = text::to_lower_ascii(language);
    return l;
}

Literal typed_literal(std::string lexical, std::string datatype_iri) {
    Literal l;
    l.lexical = std::move(lexical);
    l.datatype = std::move(datatype_iri);
    return l;
}

}  // namespace eventforge::rdf
