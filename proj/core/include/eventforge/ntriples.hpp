#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eventforge/rdf.hpp"

namespace eventforge::rdf {

struct ParseError {
    std::size_t line = 0;
    std::string message;
};

struct ParserStats {
    std::size_t lines = 0;
    std::size_t parsed = 0;
    std::size_t errors = 0;
};

enum class LineStatus { ok, blank, error };

// Pure per-line parsers. `blank` covers empty and comment-only lines.
// Malformed lines yield `error` with a message; the caller decides what to
// do with them (the stream drivers below report and continue).
LineStatus parse_triple_line(std::string_view line, Triple& out, std::string& error);
LineStatus parse_quad_line(std::string_view line, const Iri& default_graph, Quad& out,
                           std::string& error);

using TripleSink = std::function<void(std::size_t line_no, Triple&&)>;
using QuadSink = std::function<void(std::size_t line_no, Quad&&)>;
using ErrorSink = std::function<void(const ParseError&)>;

// Streaming drivers: one callback per well-formed line, one per malformed
// line; parsing never aborts the stream. Accepts LF and CRLF endings.
ParserStats parse_ntriples(std::istream& in, const TripleSink& on_triple,
                           const ErrorSink& on_error);
ParserStats parse_nquads(std::istream& in, const Iri& default_graph, const QuadSink& on_quad,
                         const ErrorSink& on_error);

struct TripleDocument {
    std::vector<Triple> triples;
    std::vector<ParseError> errors;
};

struct QuadDocument {
    std::vector<Quad> quads;
    std::vector<ParseError> errors;
};

TripleDocument read_ntriples(std::istream& in);
QuadDocument read_nquads(std::istream& in, const Iri& default_graph);

// Parses one standalone term (IRI, blank node or literal) in N-Triples
// syntax; the whole input must be consumed.
std::optional<Term> parse_term(std::string_view text);

// Serialization. One statement per line, single spaces between terms,
// ` .` terminator; literals get canonical escaping. Byte-deterministic.
void write_term(std::string& out, const Term& term);
std::string triple_line(const Triple& t);  // includes " .\n"
std::string quad_line(const Quad& q);      // includes " .\n"
void write_nquads(std::ostream& out, const std::vector<Quad>& quads);

}  // namespace eventforge::rdf
