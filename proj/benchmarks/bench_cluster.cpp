#include <benchmark/benchmark.h>

#include <random>

#include "eventforge/cluster.hpp"

using namespace eventforge;

namespace {

void BM_ClusterSameAs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(4);
    std::set<EntityKey> ids;
    std::vector<EntityKey> nodes;
    for (int k = 0; k < n; ++k) {
        EntityKey e{k % 2 ? "wikidata" : "yago", "n" + std::to_string(k)};
        ids.insert(e);
        nodes.push_back(e);
    }
    std::vector<std::pair<EntityKey, EntityKey>> links;
    for (int k = 0; k < n; ++k) {
        links.push_back({nodes[rng() % n], nodes[rng() % n]});
    }
    vocab::Schema schema{"http://bench"};
    for (auto _ : state) {
        std::vector<std::string> log;
        ClusterSet cs = cluster_same_as(ids, links, {}, IdMap{}, schema, log);
        benchmark::DoNotOptimize(cs);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ClusterSameAs)->Arg(1000)->Arg(10000);

}  // namespace
