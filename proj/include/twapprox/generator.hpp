#pragma once

#include "twapprox/graph.hpp"
#include "twapprox/tree_decomposition.hpp"

#include <cstdint>
#include <random>

namespace twapprox {

/// Deterministic RNG used everywhere randomness is needed. Draws are mapped
/// to ranges by hand so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    /// True with probability num/den.
    bool chance(std::int64_t num, std::int64_t den);

private:
    std::mt19937_64 engine_;
};

struct GeneratedGraph {
    Graph graph;
    TreeDecomposition td;  // the k-tree's natural decomposition
};

/// Random partial k-tree on n vertices. Starts from the clique on 1..k+1 and
/// attaches each further vertex to a uniformly chosen existing k-clique; each
/// edge then survives with probability keep_num/keep_den. The k-tree
/// decomposition (one bag per added vertex) stays valid for the subgraph.
GeneratedGraph generate_partial_ktree(Vertex n, std::int32_t k, std::int64_t keep_num,
                                      std::int64_t keep_den, std::uint64_t seed);

} // namespace twapprox
