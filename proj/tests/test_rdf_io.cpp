#include <set>
#include <sstream>

#include "doctest.h"
#include "eventforge/ntriples.hpp"
#include "helpers.hpp"

using namespace eventforge::rdf;

namespace {

Triple must_parse(const std::string& line) {
    Triple t;
    std::string err;
    REQUIRE_MESSAGE(parse_triple_line(line, t, err) == LineStatus::ok, err);
    return t;
}

std::string must_fail(const std::string& line) {
    Triple t;
    std::string err;
    REQUIRE(parse_triple_line(line, t, err) == LineStatus::error);
    return err;
}

}  // namespace

TEST_CASE("language-tagged literal") {
    Triple t = must_parse("<http://a> <http://p> \"x\"@en .");
    CHECK(as_iri(t.subject).value == "http://a");
    CHECK(t.predicate.value == "http://p");
    const Literal& lit = as_literal(t.object);
    CHECK(lit.lexical == "x");
    CHECK(lit.language == "en");
    CHECK(lit.datatype.empty());
}

TEST_CASE("language tags are lowercased") {
    Triple t = must_parse("<http://a> <http://p> \"x\"@EN-Latn .");
    CHECK(as_literal(t.object).language == "en-latn");
}

TEST_CASE("typed date literal") {
    Triple t = must_parse(
        "<http://a> <http://p> \"1941-02-17\"^^<http://www.w3.org/2001/XMLSchema#date> .");
    const Literal& lit = as_literal(t.object);
    CHECK(lit.lexical == "1941-02-17");
    CHECK(lit.datatype == "http://www.w3.org/2001/XMLSchema#date");
    CHECK(lit.language.empty());
}

TEST_CASE("comments and blank lines are skipped") {
    std::istringstream in("# comment\n\n   \n<http://a> <http://p> <http://b> .\n");
    TripleDocument doc = read_ntriples(in);
    CHECK(doc.triples.size() == 1);
    CHECK(doc.errors.empty());
}

TEST_CASE("escape decoding") {
    Triple t = must_parse(R"(<http://a> <http://p> "a\tb\nc\"d\\eA\U0001F600" .)");
    CHECK(as_literal(t.object).lexical == "a\tb\nc\"d\\eA\xF0\x9F\x98\x80");
}

TEST_CASE("uchar escapes in IRIs") {
    Triple t = must_parse(R"(<http://a/é> <http://p> <http://b> .)");
    CHECK(as_iri(t.subject).value == "http://a/\xC3\xA9");
}

TEST_CASE("blank node subject and object") {
    Triple t = must_parse("_:b1 <http://p> _:b2.more .");
    CHECK(std::get<BlankNode>(t.subject).label == "b1");
    CHECK(std::get<BlankNode>(t.object).label == "b2.more");
}

TEST_CASE("malformed lines are reported per line") {
    CHECK(must_fail("<http://a> <http://p> \"x\" ") == "missing final '.'");
    CHECK(must_fail("\"lit\" <http://p> <http://b> .") == "literal in subject position");
    CHECK(must_fail("<http://a <http://p> <http://b> .") == "invalid character in IRI");
    CHECK(must_fail("<http://a> <http://p> <http://b") == "unterminated IRI");
    CHECK(must_fail("<http://a> <http://p> \"x") == "unterminated literal");
    CHECK(must_fail(R"(<http://a> <http://p> "x\qz" .)") == "bad escape in literal");
    CHECK(must_fail(R"(<http://a/\n> <http://p> <http://b> .)") ==
          "bad escape in IRI (only \\u/\\U allowed)");
    CHECK(must_fail("<http://a> \"notiri\" <http://b> .") == "predicate must be an IRI");
    CHECK(must_fail("<http://a> <http://p> \"x\"@9x .") == "malformed language tag");
    CHECK(must_fail("<http://a b> <http://p> <http://c> .") == "invalid character in IRI");
    CHECK(must_fail(R"(<http://a> <http://p> "x\uD800y" .)") ==
          "escape denotes an invalid code point");
}

TEST_CASE("quad with explicit graph") {
    Quad q;
    std::string err;
    REQUIRE(parse_quad_line("<http://a> <http://p> <http://b> <http://g> .", Iri{"http://d"}, q,
                            err) == LineStatus::ok);
    CHECK(q.graph.value == "http://g");
}

TEST_CASE("three-term line falls back to the default graph") {
    Quad q;
    std::string err;
    REQUIRE(parse_quad_line("<http://a> <http://p> \"v\" .", Iri{"http://d"}, q, err) ==
            LineStatus::ok);
    CHECK(q.graph.value == "http://d");
}

TEST_CASE("five-term line is an error and the stream continues") {
    std::istringstream in(
        "<http://a> <http://p> <http://b> <http://g> <http://x> .\n"
        "<http://a> <http://p> <http://b> <http://g> .\n");
    QuadDocument doc = read_nquads(in, Iri{"http://d"});
    CHECK(doc.quads.size() == 1);
    REQUIRE(doc.errors.size() == 1);
    CHECK(doc.errors[0].line == 1);
}

TEST_CASE("literal graph term is rejected") {
    Quad q;
    std::string err;
    CHECK(parse_quad_line("<http://a> <http://p> <http://b> \"g\" .", Iri{"http://d"}, q, err) ==
          LineStatus::error);
    CHECK(err == "graph term must be an IRI");
    CHECK(parse_quad_line("<http://a> <http://p> <http://b> _:g .", Iri{"http://d"}, q, err) ==
          LineStatus::error);
    CHECK(err == "graph term must be an IRI");
}

TEST_CASE("serialization escapes quotes, backslashes and line breaks") {
    Quad q = make_quad(Iri{"http://a"}, Iri{"http://p"}, plain_literal("a\"b\\c\nd\re\x01"),
                       Iri{"http://g"});
    std::string line = quad_line(q);
    CHECK(line == "<http://a> <http://p> \"a\\\"b\\\\c\\nd\\re\\u0001\" <http://g> .\n");
    // No raw quote/backslash/newline survives inside the literal body.
    std::string body = line.substr(line.find('"') + 1, line.rfind('"') - line.find('"') - 1);
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '\\') {
            ++i;  // escaped char
            continue;
        }
        CHECK(body[i] != '"');
        CHECK(body[i] != '\n');
        CHECK(body[i] != '\r');
    }
}

TEST_CASE("serialization is deterministic") {
    testutil::RandomRdf gen(7);
    std::vector<Quad> quads;
    for (int i = 0; i < 50; ++i) quads.push_back(gen.quad());
    std::ostringstream a, b;
    write_nquads(a, quads);
    write_nquads(b, quads);
    CHECK(a.str() == b.str());
}

TEST_CASE("round-trip identity on random quads") {
    testutil::RandomRdf gen(42);
    for (int i = 0; i < 2000; ++i) {
        Quad q = gen.quad();
        std::string line = quad_line(q);
        Quad back;
        std::string err;
        REQUIRE_MESSAGE(parse_quad_line(line, Iri{"http://d"}, back, err) == LineStatus::ok,
                        (err + " | " + line));
        CHECK(back == q);
    }
}

TEST_CASE("error isolation: garbage lines do not disturb valid ones") {
    testutil::RandomRdf gen(99);
    std::vector<Quad> quads;
    for (int i = 0; i < 200; ++i) quads.push_back(gen.quad());

    std::ostringstream clean;
    write_nquads(clean, quads);

    // Interleave junk between valid lines.
    std::istringstream source(clean.str());
    std::ostringstream dirty;
    std::string line;
    int n = 0;
    while (std::getline(source, line)) {
        dirty << line << "\n";
        switch (n++ % 4) {
            case 0: dirty << "%%% not rdf at all\n"; break;
            case 1: dirty << "<http://unterminated <http://p> <http://o> .\n"; break;
            case 2: dirty << "\"literal subject\" <http://p> <http://o> .\n"; break;
            default: break;
        }
    }

    std::istringstream dirty_in(dirty.str());
    QuadDocument doc = read_nquads(dirty_in, Iri{"http://d"});
    std::multiset<Quad> expect(quads.begin(), quads.end());
    std::multiset<Quad> got(doc.quads.begin(), doc.quads.end());
    CHECK(expect == got);
    CHECK(doc.errors.size() == 150);
}
