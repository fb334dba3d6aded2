#include "twapprox/graph.hpp"

#include "twapprox/errors.hpp"

#include <algorithm>
#include <deque>

namespace twapprox {

Graph::Graph(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges) : n_(n) {
    if (n < 0) throw InputError("negative vertex count");
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (!has_vertex(a) || !has_vertex(b))
            throw InputError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                             "} references a vertex outside 1.." + std::to_string(n));
        if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
        edges_.push_back(a < b ? Edge{a, b} : Edge{b, a});
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
        throw InputError("duplicate edge {" + std::to_string(dup->u) + "," +
                         std::to_string(dup->v) + "}");

    adj_.assign(static_cast<std::size_t>(n) + 1, {});
    inc_.assign(static_cast<std::size_t>(n) + 1, {});
    for (EdgeId e = 0; e < m(); ++e) {
        const Edge& ed = edge(e);
        adj_[idx(ed.u)].push_back(ed.v);
        inc_[idx(ed.u)].push_back(e);
        adj_[idx(ed.v)].push_back(ed.u);
        inc_[idx(ed.v)].push_back(e);
    }
    // Keep neighbor lists sorted; incident ids follow the same permutation.
    for (Vertex v = 1; v <= n; ++v) {
        auto& a = adj_[idx(v)];
        auto& ids = inc_[idx(v)];
        std::vector<std::size_t> perm(a.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return a[x] < a[y]; });
        std::vector<Vertex> a2;
        std::vector<EdgeId> i2;
        for (auto p : perm) {
            a2.push_back(a[p]);
            i2.push_back(ids[p]);
        }
        a = std::move(a2);
        ids = std::move(i2);
    }
}

std::optional<EdgeId> Graph::edge_id(Vertex u, Vertex v) const {
    if (!has_vertex(u) || !has_vertex(v) || u == v) return std::nullopt;
    const auto& a = adj_[idx(u)];
    auto it = std::lower_bound(a.begin(), a.end(), v);
    if (it == a.end() || *it != v) return std::nullopt;
    return inc_[idx(u)][static_cast<std::size_t>(it - a.begin())];
}

Graph Graph::induced(const VertexSet& keep) const {
    std::vector<Vertex> relabel(static_cast<std::size_t>(n_) + 1, 0);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (!has_vertex(keep[i])) throw InputError("induced: unknown vertex " + std::to_string(keep[i]));
        relabel[idx(keep[i])] = static_cast<Vertex>(i + 1);
    }
    std::vector<std::pair<Vertex, Vertex>> es;
    for (const Edge& e : edges_)
        if (relabel[idx(e.u)] && relabel[idx(e.v)]) es.emplace_back(relabel[idx(e.u)], relabel[idx(e.v)]);
    return Graph(static_cast<Vertex>(keep.size()), es);
}

std::string to_string(ProblemKind kind) {
    switch (kind) {
    case ProblemKind::CVC: return "cvc";
    case ProblemKind::TSS: return "tss";
    case ProblemKind::VDS: return "vds";
    }
    return "?";
}

ProblemKind parse_problem_kind(const std::string& s) {
    if (s == "cvc") return ProblemKind::CVC;
    if (s == "tss") return ProblemKind::TSS;
    if (s == "vds") return ProblemKind::VDS;
    throw InputError("unknown problem kind '" + s + "'");
}

std::vector<std::int32_t> indegrees(const Graph& g, const Orientation& o) {
    std::vector<std::int32_t> in(static_cast<std::size_t>(g.n()) + 1, 0);
    for (EdgeId e = 0; e < g.m(); ++e)
        if (o.oriented(e)) ++in[static_cast<std::size_t>(o[e])];
    return in;
}

std::vector<std::int32_t> outdegrees(const Graph& g, const Orientation& o) {
    std::vector<std::int32_t> out(static_cast<std::size_t>(g.n()) + 1, 0);
    for (EdgeId e = 0; e < g.m(); ++e)
        if (o.oriented(e)) ++out[static_cast<std::size_t>(Graph::other(g.edge(e), o[e]))];
    return out;
}

bool orientation_feasible(const Graph& g, const Orientation& o,
                          std::span<const std::int64_t> capacity, const VertexSet& scope) {
    auto in = indegrees(g, o);
    for (Vertex v : scope)
        if (in[static_cast<std::size_t>(v)] > capacity[static_cast<std::size_t>(v)]) return false;
    return true;
}

VertexSet covering_set(const Graph& g, const Orientation& o) {
    auto in = indegrees(g, o);
    VertexSet s;
    for (Vertex v = 1; v <= g.n(); ++v)
        if (in[static_cast<std::size_t>(v)] > 0) s.push_back(v);
    return s;
}

std::vector<VertexSet> components_after_removal(const Graph& g, const VertexSet& removed) {
    std::vector<char> gone(static_cast<std::size_t>(g.n()) + 1, 0);
    for (Vertex x : removed) {
        if (!g.has_vertex(x)) throw InputError("separator contains unknown vertex " + std::to_string(x));
        gone[static_cast<std::size_t>(x)] = 1;
    }
    std::vector<VertexSet> parts;
    std::vector<char> seen(gone);
    for (Vertex s = 1; s <= g.n(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        VertexSet part;
        std::deque<Vertex> queue{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!queue.empty()) {
            Vertex x = queue.front();
            queue.pop_front();
            part.push_back(x);
            for (Vertex y : g.neighbors(x))
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    queue.push_back(y);
                }
        }
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
    }
    return parts;
}

VertexSet all_vertices(const Graph& g) {
    VertexSet s(static_cast<std::size_t>(g.n()));
    for (Vertex v = 1; v <= g.n(); ++v) s[static_cast<std::size_t>(v - 1)] = v;
    return s;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

void normalize(VertexSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

} // namespace twapprox
