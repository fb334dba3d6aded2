#include "twapprox/oracles.hpp"

#include "twapprox/cvc_exact.hpp"
#include "twapprox/errors.hpp"
#include "twapprox/maxflow.hpp"
#include "twapprox/tss_vds.hpp"

#include <cstdlib>
#include <functional>
#include <string>

namespace twapprox {

namespace {

std::optional<std::int32_t> guard_override() {
    const char* s = std::getenv("TWAPPROX_GUARD_MAX");
    if (s == nullptr || *s == '\0') return std::nullopt;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v <= 0 || v > 62) throw ConfigError("TWAPPROX_GUARD_MAX must be an integer in [1, 62]");
    return static_cast<std::int32_t>(v);
}

void check_vertices(const Graph& g) {
    if (g.n() > oracle_vertex_guard())
        throw ResourceError("oracle guard: n = " + std::to_string(g.n()) + " exceeds " +
                            std::to_string(oracle_vertex_guard()));
}

// Smallest size whose some subset passes `ok`, scanning sizes upward.
template <class F>
std::optional<std::int32_t> min_subset(const Graph& g, F&& ok) {
    VertexSet all = all_vertices(g);
    for (std::size_t k = 0; k <= all.size(); ++k)
        if (first_subset(all, k, ok)) return static_cast<std::int32_t>(k);
    return std::nullopt;
}

bool flow_assignable(const Graph& g, std::span<const std::int64_t> capacity, const VertexSet& s) {
    FlowNetwork net(2, 0, 1);
    std::vector<FlowNetwork::Node> node(static_cast<std::size_t>(g.n()) + 1, -1);
    for (Vertex v : s) {
        node[static_cast<std::size_t>(v)] = net.add_node();
        net.add_arc(node[static_cast<std::size_t>(v)], 1, capacity[static_cast<std::size_t>(v)]);
    }
    for (const Edge& e : g.edges()) {
        auto nu = node[static_cast<std::size_t>(e.u)], nv = node[static_cast<std::size_t>(e.v)];
        if (nu < 0 && nv < 0) return false;
        auto en = net.add_node();
        net.add_arc(0, en, 1);
        if (nu >= 0) net.add_arc(en, nu, 1);
        if (nv >= 0) net.add_arc(en, nv, 1);
    }
    return max_flow(net).value == g.m();
}

// Kuhn-style augmenting paths, each vertex of s holding up to c(v) edges.
bool matching_assignable(const Graph& g, std::span<const std::int64_t> capacity, const VertexSet& s) {
    std::vector<char> in(static_cast<std::size_t>(g.n()) + 1, 0);
    for (Vertex v : s) in[static_cast<std::size_t>(v)] = 1;
    std::vector<std::vector<EdgeId>> held(static_cast<std::size_t>(g.n()) + 1);
    std::vector<char> seen;
    std::function<bool(EdgeId)> place = [&](EdgeId e) -> bool {
        for (Vertex x : {g.edge(e).u, g.edge(e).v}) {
            auto xi = static_cast<std::size_t>(x);
            if (!in[xi] || seen[xi]) continue;
            seen[xi] = 1;
            if (static_cast<std::int64_t>(held[xi].size()) < capacity[xi]) {
                held[xi].push_back(e);
                return true;
            }
            for (auto& f : held[xi]) {
                EdgeId old = f;
                f = e;
                if (place(old)) return true;
                f = old;
            }
        }
        return false;
    };
    for (EdgeId e = 0; e < g.m(); ++e) {
        seen.assign(static_cast<std::size_t>(g.n()) + 1, 0);
        if (!place(e)) return false;
    }
    return true;
}

} // namespace

std::int32_t oracle_vertex_guard() { return guard_override().value_or(18); }
std::int32_t oracle_edge_guard() { return guard_override().value_or(20); }

std::optional<std::int32_t> cvc_opt_brute(const Graph& g, std::span<const std::int64_t> capacity) {
    check_vertices(g);
    return min_subset(g, [&](const VertexSet& s) { return flow_assignable(g, capacity, s); });
}

std::optional<std::int32_t> cvc_opt_matching(const Graph& g, std::span<const std::int64_t> capacity) {
    check_vertices(g);
    return min_subset(g, [&](const VertexSet& s) { return matching_assignable(g, capacity, s); });
}

std::int32_t tss_opt_brute(const Graph& g, std::span<const std::int64_t> t) {
    check_vertices(g);
    return *min_subset(g, [&](const VertexSet& s) { return tss_is_target_set(g, t, s); });
}

std::int32_t vds_opt_brute(const Graph& g, std::span<const std::int64_t> t) {
    check_vertices(g);
    return *min_subset(g, [&](const VertexSet& s) { return vds_check(g, t, s); });
}

std::map<RecordKey, std::int32_t> enumerate_records(const Graph& g, const NiceTreeDecomposition& ntd,
                                                    std::span<const std::int64_t> capacity, NodeId a) {
    auto edges = scope_edges(g, ntd, a);
    if (static_cast<std::int32_t>(edges.size()) > oracle_edge_guard())
        throw ResourceError("oracle guard: " + std::to_string(edges.size()) + " scope edges exceed " +
                            std::to_string(oracle_edge_guard()));
    const auto& bag = ntd.node(a).bag;
    VertexSet y = ntd.y_set(a);
    std::vector<std::int32_t> pos(static_cast<std::size_t>(g.n()) + 1, -1);
    for (std::size_t p = 0; p < bag.size(); ++p) pos[static_cast<std::size_t>(bag[p])] = static_cast<std::int32_t>(p);

    std::map<RecordKey, std::int32_t> out;
    std::vector<std::int64_t> indeg(static_cast<std::size_t>(g.n()) + 1);
    const std::uint64_t total = std::uint64_t{1} << edges.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::fill(indeg.begin(), indeg.end(), 0);
        RecordKey d(bag.size(), 0);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Edge& e = g.edge(edges[i]);
            Vertex sink = (mask >> i & 1U) ? e.v : e.u;
            Vertex tail = Graph::other(e, sink);
            ++indeg[static_cast<std::size_t>(sink)];
            if (auto p = pos[static_cast<std::size_t>(tail)]; p >= 0) ++d[static_cast<std::size_t>(p)];
        }
        bool ok = true;
        std::int32_t used = 0;
        for (Vertex v : y) {
            auto vi = static_cast<std::size_t>(v);
            if (indeg[vi] > capacity[vi]) {
                ok = false;
                break;
            }
            used += indeg[vi] > 0;
        }
        if (!ok) continue;
        auto [it, fresh] = out.try_emplace(d, used);
        if (!fresh) it->second = std::min(it->second, used);
    }
    return out;
}

} // namespace twapprox
