#include <benchmark/benchmark.h>

#include <random>

#include "eventforge/fuse.hpp"

using namespace eventforge;

namespace {

SourceRegistry make_registry() {
    return SourceRegistry::from_specs(
        {{"wikidata", "", "", 0, "", "x", {}},
         {"dbpedia-en", "", "", 0, "", "x", {}},
         {"wikipedia-en", "", "", 0, "", "x", {}},
         {"wcep", "", "", 0, "", "x", {}},
         {"yago", "", "", 0, "", "x", {}}},
        "http://bench");
}

void BM_FuseTime(benchmark::State& state) {
    SourceRegistry reg = make_registry();
    std::mt19937 rng(2);
    const char* sources[] = {"wikidata", "dbpedia-en", "wikipedia-en", "wcep", "yago"};
    std::vector<std::vector<TimeCandidate>> sets;
    for (int i = 0; i < 256; ++i) {
        std::vector<TimeCandidate> cs;
        int n = 2 + static_cast<int>(rng() % 5);
        for (int k = 0; k < n; ++k) {
            int y = 1900 + static_cast<int>(rng() % 120);
            unsigned m = 1 + rng() % 12;
            unsigned d = 1 + rng() % days_in_month(y, m);
            cs.push_back({*FlexDate::make_day(y, m, d), sources[rng() % 5],
                          TimePosition::begin});
        }
        sets.push_back(std::move(cs));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        auto fused = fuse_time(sets[i % sets.size()], TimePosition::begin, reg);
        benchmark::DoNotOptimize(fused);
        ++i;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FuseTime);

void BM_FuseLocations(benchmark::State& state) {
    std::mt19937 rng(3);
    const int n = static_cast<int>(state.range(0));
    PlaceHierarchy h;
    std::set<std::string> input;
    auto name = [](int k) { return "p" + std::to_string(k); };
    for (int child = 1; child < n; ++child) {
        h.add(name(child), name(static_cast<int>(rng() % child)));
        if (rng() % 2) input.insert(name(child));
    }
    input.insert(name(0));
    for (auto _ : state) {
        auto fused = fuse_locations(input, h);
        benchmark::DoNotOptimize(fused);
    }
}
BENCHMARK(BM_FuseLocations)->Arg(30)->Arg(300);

}  // namespace
