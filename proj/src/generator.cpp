#include "twapprox/generator.hpp"

#include "twapprox/errors.hpp"

#include <algorithm>

namespace twapprox {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw InputError("empty random range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
}

bool Rng::chance(std::int64_t num, std::int64_t den) {
    if (num >= den) return true;
    if (num <= 0) return false;
    return uniform(0, den - 1) < num;
}

GeneratedGraph generate_partial_ktree(Vertex n, std::int32_t k, std::int64_t keep_num,
                                      std::int64_t keep_den, std::uint64_t seed) {
    if (k < 0) throw InputError("k must be non-negative");
    if (n <= k) throw InputError("partial k-tree needs n > k (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    if (keep_den <= 0 || keep_num < 0 || keep_num > keep_den) throw InputError("keep probability must lie in [0,1]");

    Rng rng(seed);
    struct Clique {
        VertexSet members;
        NodeId node;
    };
    std::vector<Clique> cliques;
    std::vector<std::pair<Vertex, Vertex>> edges;
    TreeDecomposition td;

    VertexSet base;
    for (Vertex v = 1; v <= k + 1; ++v) base.push_back(v);
    td.bags.push_back(base);
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = i + 1; j < base.size(); ++j) edges.emplace_back(base[i], base[j]);
    for (std::size_t skip = 0; skip < base.size(); ++skip) {
        VertexSet c;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (i != skip) c.push_back(base[i]);
        cliques.push_back({c, 0});
    }

    for (Vertex v = k + 2; v <= n; ++v) {
        const Clique host = cliques[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cliques.size()) - 1))];
        VertexSet bag = host.members;
        bag.push_back(v);
        normalize(bag);
        const auto node = td.size();
        td.bags.push_back(bag);
        td.tree_edges.emplace_back(host.node, node);
        for (Vertex u : host.members) edges.emplace_back(u, v);
        for (std::size_t skip = 0; skip < host.members.size(); ++skip) {
            VertexSet c;
            for (std::size_t i = 0; i < host.members.size(); ++i)
                if (i != skip) c.push_back(host.members[i]);
            c.push_back(v);
            normalize(c);
            cliques.push_back({c, node});
        }
        if (k == 0) cliques.push_back({{}, node});
    }

    std::vector<std::pair<Vertex, Vertex>> kept;
    for (auto e : edges)
        if (rng.chance(keep_num, keep_den)) kept.push_back(e);
    return {Graph(n, kept), std::move(td)};
}

} // namespace twapprox
