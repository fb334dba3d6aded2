#pragma once

#include "twapprox/generator.hpp"
#include "twapprox/graph.hpp"
#include "twapprox/tree_decomposition.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace twapprox::testing {

inline Graph make_graph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) { return Graph(n, edges); }

inline Graph path(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v < n; ++v) e.emplace_back(v, v + 1);
    return Graph(n, e);
}

inline Graph complete(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}

inline Graph star(Vertex leaves) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 2; v <= leaves + 1; ++v) e.emplace_back(1, v);
    return Graph(leaves + 1, e);
}

/// weights[0] is a dummy so that w[v] reads naturally.
inline std::vector<std::int64_t> weights(std::vector<std::int64_t> w) {
    w.insert(w.begin(), 0);
    return w;
}

inline std::vector<std::int64_t> uniform_weights(Vertex n, std::int64_t c) {
    return std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, c);
}

inline NiceTreeDecomposition nice_of(const Graph& g) { return make_nice(g, min_fill_decomposition(g)); }

inline WeightedInstance instance(Graph g, ProblemKind kind, std::vector<std::int64_t> w) {
    WeightedInstance inst;
    inst.graph = std::move(g);
    inst.kind = kind;
    inst.weight = std::move(w);
    return inst;
}

/// Random partial k-tree plus weights: capacities in [0, max_cap] for CVC,
/// thresholds in [0, deg] otherwise.
struct Sample {
    WeightedInstance inst;
    TreeDecomposition td;
    NiceTreeDecomposition ntd;
};

inline Sample sample(Vertex n, std::int32_t k, bool half, std::uint64_t seed, ProblemKind kind,
                     std::int64_t max_cap = 3) {
    auto gg = generate_partial_ktree(n, k, 1, half ? 2 : 1, seed);
    Rng rng(seed * 0x2545f4914f6cdd1dULL + 17);
    std::vector<std::int64_t> w(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v = 1; v <= n; ++v)
        w[static_cast<std::size_t>(v)] = rng.uniform(0, kind == ProblemKind::CVC ? max_cap : gg.graph.degree(v));
    Sample s;
    s.ntd = make_nice(gg.graph, gg.td);
    s.inst = instance(gg.graph, kind, std::move(w));
    s.td = std::move(gg.td);
    return s;
}

} // namespace twapprox::testing
