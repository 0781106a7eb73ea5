#include <benchmark/benchmark.h>

#include <random>

#include "congraph/graph.hpp"
#include "congraph/seq_graph.hpp"

namespace {

constexpr congraph::Key kRange = 1 << 14;

// Graph prefilled with a random vertex set and edges, shared per benchmark.
struct Fixture {
    congraph::Graph graph{4};
    std::vector<congraph::Key> keys;

    Fixture() {
        auto h = graph.attach();
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<congraph::Key> key(1, kRange);
        while (keys.size() < 4096) {
            congraph::Key k = key(rng);
            if (h.add_vertex(k)) keys.push_back(k);
        }
        std::uniform_int_distribution<std::size_t> idx(0, keys.size() - 1);
        for (int i = 0; i < 4096 * 4; ++i) {
            congraph::Key a = keys[idx(rng)];
            congraph::Key b = keys[idx(rng)];
            if (a != b) h.add_edge(a, b);
        }
    }
};

Fixture& fixture() {
    static Fixture f;
    return f;
}

void BM_ContainsVertex(benchmark::State& state) {
    Fixture& f = fixture();
    auto h = f.graph.attach();
    std::mt19937_64 rng(state.thread_index());
    std::uniform_int_distribution<congraph::Key> key(1, kRange);
    for (auto _ : state) {
        benchmark::DoNotOptimize(h.contains_vertex(key(rng)));
    }
}
BENCHMARK(BM_ContainsVertex);

void BM_AddRemoveVertex(benchmark::State& state) {
    Fixture& f = fixture();
    auto h = f.graph.attach();
    std::mt19937_64 rng(state.thread_index() + 100);
    std::uniform_int_distribution<congraph::Key> key(kRange + 1, 2 * kRange);
    for (auto _ : state) {
        congraph::Key k = key(rng);
        h.add_vertex(k);
        h.remove_vertex(k);
    }
}
BENCHMARK(BM_AddRemoveVertex);

void BM_ContainsEdge(benchmark::State& state) {
    Fixture& f = fixture();
    auto h = f.graph.attach();
    std::mt19937_64 rng(state.thread_index() + 200);
    std::uniform_int_distribution<std::size_t> idx(0, f.keys.size() - 1);
    for (auto _ : state) {
        congraph::Key a = f.keys[idx(rng)];
        congraph::Key b = f.keys[idx(rng)];
        if (a == b) continue;
        benchmark::DoNotOptimize(h.contains_edge(a, b));
    }
}
BENCHMARK(BM_ContainsEdge);

void BM_AddRemoveEdge(benchmark::State& state) {
    Fixture& f = fixture();
    auto h = f.graph.attach();
    std::mt19937_64 rng(state.thread_index() + 300);
    std::uniform_int_distribution<std::size_t> idx(0, f.keys.size() - 1);
    for (auto _ : state) {
        congraph::Key a = f.keys[idx(rng)];
        congraph::Key b = f.keys[idx(rng)];
        if (a == b) continue;
        h.add_edge(a, b);
        h.remove_edge(a, b);
    }
}
BENCHMARK(BM_AddRemoveEdge);

void BM_GetPath(benchmark::State& state) {
    Fixture& f = fixture();
    auto h = f.graph.attach();
    std::mt19937_64 rng(state.thread_index() + 400);
    std::uniform_int_distribution<std::size_t> idx(0, f.keys.size() - 1);
    for (auto _ : state) {
        congraph::Key a = f.keys[idx(rng)];
        congraph::Key b = f.keys[idx(rng)];
        if (a == b) continue;
        benchmark::DoNotOptimize(h.get_path(a, b));
    }
}
BENCHMARK(BM_GetPath);

void BM_SeqOracleBfs(benchmark::State& state) {
    // Mirror of Fixture built with the same RNG recipe.
    static congraph::SeqGraph* g = [] {
        auto* sg = new congraph::SeqGraph();
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<congraph::Key> key(1, kRange);
        std::vector<congraph::Key> ks;
        while (ks.size() < 4096) {
            congraph::Key k = key(rng);
            if (sg->add_vertex(k)) ks.push_back(k);
        }
        std::uniform_int_distribution<std::size_t> idx(0, ks.size() - 1);
        for (int i = 0; i < 4096 * 4; ++i) {
            congraph::Key a = ks[idx(rng)];
            congraph::Key b = ks[idx(rng)];
            if (a != b) sg->add_edge(a, b);
        }
        return sg;
    }();
    std::mt19937_64 rng(500);
    Fixture& f = fixture();
    std::uniform_int_distribution<std::size_t> idx(0, f.keys.size() - 1);
    for (auto _ : state) {
        congraph::Key a = f.keys[idx(rng)];
        congraph::Key b = f.keys[idx(rng)];
        if (a == b) continue;
        benchmark::DoNotOptimize(g->has_path(a, b));
    }
}
BENCHMARK(BM_SeqOracleBfs);

}  // namespace

BENCHMARK_MAIN();
