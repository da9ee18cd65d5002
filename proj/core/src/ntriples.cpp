#include "eventforge/ntriples.hpp"

#include <cctype>
#include <cstdint>
#include <istream>
#include <ostream>

#include "eventforge/text.hpp"

namespace eventforge::rdf {

namespace {

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// One-line cursor. All parse_* members return false and set err_ on failure.
class Cursor {
public:
    explicit Cursor(std::string_view line) : s_(line) {}

    void skip_ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
    }

    bool at_end() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    const std::string& error() const { return err_; }

    // True when the rest of the line is whitespace or a trailing comment.
    bool only_trailing() {
        skip_ws();
        return at_end() || s_[i_] == '#';
    }

    bool parse_uchar(std::string& out) {
        // Called with cursor on 'u' or 'U' (backslash already consumed).
        char kind = s_[i_++];
        int digits = kind == 'u' ? 4 : 8;
        char32_t cp = 0;
        for (int k = 0; k < digits; ++k) {
            if (i_ >= s_.size()) return fail("truncated \\" + std::string(1, kind) + " escape");
            int v = hex_value(s_[i_++]);
            if (v < 0) return fail("bad hex digit in \\" + std::string(1, kind) + " escape");
            cp = (cp << 4) | static_cast<char32_t>(v);
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            return fail("escape denotes an invalid code point");
        }
        append_utf8(out, cp);
        return true;
    }

    bool parse_iriref(Iri& out) {
        if (at_end() || s_[i_] != '<') return fail("expected '<'");
        ++i_;
        std::string value;
        while (true) {
            if (i_ >= s_.size()) return fail("unterminated IRI");
            char c = s_[i_];
            if (c == '>') {
                ++i_;
                break;
            }
            if (c == '\\') {
                ++i_;
                if (i_ >= s_.size() || (s_[i_] != 'u' && s_[i_] != 'U')) {
                    return fail("bad escape in IRI (only \\u/\\U allowed)");
                }
                if (!parse_uchar(value)) return false;
                continue;
            }
            value += c;
            ++i_;
        }
        if (!is_valid_iri(value)) return fail("invalid character in IRI");
        out.value = std::move(value);
        return true;
    }

    bool parse_blank_node(BlankNode& out) {
        // Cursor on '_'.
        if (i_ + 1 >= s_.size() || s_[i_] != '_' || s_[i_ + 1] != ':') {
            return fail("expected blank node label");
        }
        i_ += 2;
        std::string label;
        auto head_char = [](unsigned char c) {
            return std::isalnum(c) || c == '_' || c == ':' || c >= 0x80;
        };
        auto body_char = [&](unsigned char c) { return head_char(c) || c == '-' || c == '.'; };
        if (i_ >= s_.size() || !head_char(static_cast<unsigned char>(s_[i_]))) {
            return fail("invalid blank node label");
        }
        while (i_ < s_.size() && body_char(static_cast<unsigned char>(s_[i_]))) {
            label += s_[i_++];
        }
        // A trailing '.' belongs to the statement terminator, not the label.
        while (!label.empty() && label.back() == '.') {
            label.pop_back();
            --i_;
        }
        if (label.empty()) return fail("invalid blank node label");
        out.label = std::move(label);
        return true;
    }

    bool parse_literal(Literal& out) {
        if (at_end() || s_[i_] != '"') return fail("expected '\"'");
        ++i_;
        std::string lex;
        while (true) {
            if (i_ >= s_.size()) return fail("unterminated literal");
            char c = s_[i_];
            if (c == '"') {
                ++i_;
                break;
            }
            if (c == '\\') {
                ++i_;
                if (i_ >= s_.size()) return fail("truncated escape in literal");
                char e = s_[i_];
                switch (e) {
                    case 't': lex += '\t'; ++i_; break;
                    case 'b': lex += '\b'; ++i_; break;
                    case 'n': lex += '\n'; ++i_; break;
                    case 'r': lex += '\r'; ++i_; break;
                    case 'f': lex += '\f'; ++i_; break;
                    case '"': lex += '"'; ++i_; break;
                    case '\'': lex += '\''; ++i_; break;
                    case '\\': lex += '\\'; ++i_; break;
                    case 'u':
                    case 'U':
                        if (!parse_uchar(lex)) return false;
                        break;
                    default:
                        return fail("bad escape in literal");
                }
                continue;
            }
            lex += c;
            ++i_;
        }
        out.lexical = std::move(lex);
        if (i_ < s_.size() && s_[i_] == '@') {
            ++i_;
            std::string tag;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) {
                tag += s_[i_++];
            }
            if (tag.empty() || tag.front() == '-' || tag.back() == '-' ||
                tag.find("--") != std::string::npos) {
                return fail("malformed language tag");
            }
            bool first_block = true;
            for (std::size_t k = 0; k < tag.size(); ++k) {
                char c = tag[k];
                if (c == '-') {
                    first_block = false;
                    continue;
                }
                bool ok = first_block ? std::isalpha(static_cast<unsigned char>(c))
                                      : std::isalnum(static_cast<unsigned char>(c));
                if (!ok) return fail("malformed language tag");
            }
            out.language = text::to_lower_ascii(tag);
        } else if (i_ + 1 < s_.size() && s_[i_] == '^' && s_[i_ + 1] == '^') {
            i_ += 2;
            Iri dt;
            if (!parse_iriref(dt)) return false;
            out.datatype = std::move(dt.value);
        }
        return true;
    }

    // kind: 0 = subject, 1 = object/graph slot
    bool parse_term(Term& out, bool literal_allowed) {
        if (at_end()) return fail("unexpected end of statement");
        char c = s_[i_];
        if (c == '<') {
            Iri iri;
            if (!parse_iriref(iri)) return false;
            out = std::move(iri);
            return true;
        }
        if (c == '_') {
            BlankNode b;
            if (!parse_blank_node(b)) return false;
            out = std::move(b);
            return true;
        }
        if (c == '"') {
            if (!literal_allowed) return fail("literal in subject position");
            Literal l;
            if (!parse_literal(l)) return false;
            out = std::move(l);
            return true;
        }
        return fail("unrecognized term");
    }

    bool expect_dot() {
        skip_ws();
        if (at_end() || s_[i_] != '.') return fail("missing final '.'");
        ++i_;
        if (!only_trailing()) return fail("trailing content after '.'");
        return true;
    }

    bool fail(std::string msg) {
        err_ = std::move(msg);
        return false;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    std::string err_;
};

// Parses subject/predicate/object; leaves the cursor before the '.' or
// graph term.
bool parse_spo(Cursor& cur, Triple& out) {
    cur.skip_ws();
    if (!cur.parse_term(out.subject, /*literal_allowed=*/false)) return false;
    cur.skip_ws();
    if (!cur.parse_iriref(out.predicate)) {
        if (cur.error() == "expected '<'") cur.fail("predicate must be an IRI");
        return false;
    }
    cur.skip_ws();
    return cur.parse_term(out.object, /*literal_allowed=*/true);
}

bool line_is_blank(std::string_view line) {
    auto t = text::trim(line);
    return t.empty() || t.front() == '#';
}

std::string_view strip_eol(std::string_view line) {
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

void escape_literal_into(std::string& out, std::string_view lexical) {
    static const char* hex = "0123456789ABCDEF";
    for (unsigned char c : lexical) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (c < 0x20 || c == 0x7F) {
                    out += "\\u00";
                    out += hex[c >> 4];
                    out += hex[c & 0xF];
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
}

}  // namespace

LineStatus parse_triple_line(std::string_view line, Triple& out, std::string& error) {
    line = strip_eol(line);
    if (line_is_blank(line)) return LineStatus::blank;
    Cursor cur(line);
    if (!parse_spo(cur, out)) {
        error = cur.error();
        return LineStatus::error;
    }
    if (!cur.expect_dot()) {
        error = cur.error();
        return LineStatus::error;
    }
    return LineStatus::ok;
}

LineStatus parse_quad_line(std::string_view line, const Iri& default_graph, Quad& out,
                           std::string& error) {
    line = strip_eol(line);
    if (line_is_blank(line)) return LineStatus::blank;
    Cursor cur(line);
    if (!parse_spo(cur, out.triple)) {
        error = cur.error();
        return LineStatus::error;
    }
    cur.skip_ws();
    if (!cur.at_end() && cur.peek() != '.') {
        Term graph_term;
        if (!cur.parse_term(graph_term, /*literal_allowed=*/true)) {
            error = cur.error();
            return LineStatus::error;
        }
        if (!is_iri(graph_term)) {
            error = "graph term must be an IRI";
            return LineStatus::error;
        }
        out.graph = std::get<Iri>(std::move(graph_term));
    } else {
        out.graph = default_graph;
    }
    if (!cur.expect_dot()) {
        // A fifth term lands here as trailing content.
        error = cur.error();
        return LineStatus::error;
    }
    return LineStatus::ok;
}

namespace {

template <typename Fn>
ParserStats drive_lines(std::istream& in, const ErrorSink& on_error, Fn&& per_line) {
    ParserStats stats;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ++stats.lines;
        std::string error;
        switch (per_line(line, line_no, error)) {
            case LineStatus::ok:
                ++stats.parsed;
                break;
            case LineStatus::blank:
                break;
            case LineStatus::error:
                ++stats.errors;
                if (on_error) on_error(ParseError{line_no, std::move(error)});
                break;
        }
    }
    return stats;
}

}  // namespace

ParserStats parse_ntriples(std::istream& in, const TripleSink& on_triple,
                           const ErrorSink& on_error) {
    return drive_lines(in, on_error,
                       [&](std::string_view line, std::size_t line_no, std::string& error) {
                           Triple t;
                           LineStatus st = parse_triple_line(line, t, error);
                           if (st == LineStatus::ok && on_triple) on_triple(line_no, std::move(t));
                           return st;
                       });
}

ParserStats parse_nquads(std::istream& in, const Iri& default_graph, const QuadSink& on_quad,
                         const ErrorSink& on_error) {
    return drive_lines(in, on_error,
                       [&](std::string_view line, std::size_t line_no, std::string& error) {
                           Quad q;
                           LineStatus st = parse_quad_line(line, default_graph, q, error);
                           if (st == LineStatus::ok && on_quad) on_quad(line_no, std::move(q));
                           return st;
                       });
}

TripleDocument read_ntriples(std::istream& in) {
    TripleDocument doc;
    parse_ntriples(
        in, [&](std::size_t, Triple&& t) { doc.triples.push_back(std::move(t)); },
        [&](const ParseError& e) { doc.errors.push_back(e); });
    return doc;
}

QuadDocument read_nquads(std::istream& in, const Iri& default_graph) {
    QuadDocument doc;
    parse_nquads(
        in, default_graph, [&](std::size_t, Quad&& q) { doc.quads.push_back(std::move(q)); },
        [&](const ParseError& e) { doc.errors.push_back(e); });
    return doc;
}

std::optional<Term> parse_term(std::string_view text) {
    Cursor cur(text);
    cur.skip_ws();
    Term term;
    if (!cur.parse_term(term, /*literal_allowed=*/true)) return std::nullopt;
    if (!cur.only_trailing()) return std::nullopt;
    return term;
}

void write_term(std::string& out, const Term& term) {
    if (const auto* iri = std::get_if<Iri>(&term)) {
        out += '<';
        out += iri->value;
        out += '>';
    } else if (const auto* b = std::get_if<BlankNode>(&term)) {
        out += "_:";
        out += b->label;
    } else {
        const auto& lit = std::get<Literal>(term);
        out += '"';
        escape_literal_into(out, lit.lexical);
        out += '"';
        if (!lit.language.empty()) {
            out += '@';
            out += lit.language;
        } else if (!lit.datatype.empty()) {
            out += "^^<";
            out += lit.datatype;
            out += '>';
        }
    }
}

namespace {

void write_spo(std::string& out, const Triple& t) {
    write_term(out, t.subject);
    out += ' ';
    out += '<';
    out += t.predicate.value;
    out += '>';
    out += ' ';
    write_term(out, t.object);
}

}  // namespace

std::string triple_line(const Triple& t) {
    std::string out;
    write_spo(out, t);
    out += " .\n";
    return out;
}

std::string quad_line(const Quad& q) {
    std::string out;
    write_spo(out, q.triple);
    out += ' ';
    out += '<';
    out += q.graph.value;
    out += '>';
    out += " .\n";
    return out;
}

void write_nquads(std::ostream& out, const std::vector<Quad>& quads) {
    for (const Quad& q : quads) out << quad_line(q);
}

}  // namespace eventforge::rdf
