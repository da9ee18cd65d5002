#include <benchmark/benchmark.h>

#include <random>
#include <sstream>
#include <vector>

#include "eventforge/ntriples.hpp"

using namespace eventforge;

namespace {

std::vector<std::string> make_lines(std::size_t n) {
    std::mt19937 rng(1);
    std::vector<std::string> lines;
    lines.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        rdf::Quad q;
        q.triple.subject = rdf::Iri{"http://example.org/resource/e" + std::to_string(rng() % 5000)};
        q.triple.predicate = rdf::Iri{"http://example.org/prop/p" + std::to_string(rng() % 40)};
        if (i % 3 == 0) {
            q.triple.object = rdf::lang_literal("label value \"quoted\" with\ttabs " +
                                                    std::to_string(i),
                                                "en");
        } else {
            q.triple.object = rdf::Iri{"http://example.org/resource/e" + std::to_string(rng() % 5000)};
        }
        q.graph = rdf::Iri{"http://example.org/graph/g" + std::to_string(rng() % 6)};
        lines.push_back(rdf::quad_line(q));
    }
    return lines;
}

void BM_ParseQuadLine(benchmark::State& state) {
    auto lines = make_lines(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        rdf::Quad q;
        std::string err;
        auto st = rdf::parse_quad_line(lines[i % lines.size()], rdf::Iri{"http://d"}, q, err);
        benchmark::DoNotOptimize(st);
        benchmark::DoNotOptimize(q);
        ++i;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParseQuadLine)->Arg(1000);

void BM_ParseStream(benchmark::State& state) {
    auto lines = make_lines(static_cast<std::size_t>(state.range(0)));
    std::string blob;
    for (const auto& l : lines) blob += l;
    for (auto _ : state) {
        std::istringstream in(blob);
        std::size_t count = 0;
        rdf::parse_nquads(
            in, rdf::Iri{"http://d"}, [&](std::size_t, rdf::Quad&&) { ++count; }, nullptr);
        benchmark::DoNotOptimize(count);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParseStream)->Arg(10000);

void BM_SerializeQuad(benchmark::State& state) {
    auto lines = make_lines(1);
    rdf::Quad q;
    std::string err;
    rdf::parse_quad_line(lines[0], rdf::Iri{"http://d"}, q, err);
    for (auto _ : state) {
        std::string line = rdf::quad_line(q);
        benchmark::DoNotOptimize(line);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SerializeQuad);

}  // namespace

BENCHMARK_MAIN();
