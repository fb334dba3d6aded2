#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twapprox {

using Vertex = std::int32_t;  // 1-based; 0 is "none"
using EdgeId = std::int32_t;
using VertexSet = std::vector<Vertex>;  // sorted, duplicate-free

struct Edge {
    Vertex u;  // u < v
    Vertex v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 1..n.
///
/// Edges are stored once with u < v and sorted lexicographically; the edge id
/// is the position in that order. Immutable after construction.
class Graph {
public:
    Graph() = default;
    /// Throws InputError on out-of-range ids or self-loops. Duplicate edges
    /// are rejected as well, since the graph is simple.
    Graph(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges);

    Vertex n() const { return n_; }
    EdgeId m() const { return static_cast<EdgeId>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[idx(v)]; }
    /// Edge ids incident to v, parallel to neighbors(v).
    std::span<const EdgeId> incident(Vertex v) const { return inc_[idx(v)]; }
    std::int32_t degree(Vertex v) const { return static_cast<std::int32_t>(adj_[idx(v)].size()); }

    bool has_vertex(Vertex v) const { return v >= 1 && v <= n_; }
    bool adjacent(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }
    std::optional<EdgeId> edge_id(Vertex u, Vertex v) const;

    static Vertex other(const Edge& e, Vertex x) { return e.u == x ? e.v : e.u; }

    /// Subgraph induced by `keep`; vertex i of the result is keep[i-1].
    Graph induced(const VertexSet& keep) const;

private:
    static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

    Vertex n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;   // index 0 unused
    std::vector<std::vector<EdgeId>> inc_;
};

enum class ProblemKind { CVC, TSS, VDS };

std::string to_string(ProblemKind kind);
ProblemKind parse_problem_kind(const std::string& s);

/// Graph plus a per-vertex weight: capacity c(v) for CVC, threshold t(v) for
/// TSS and VDS. weight[0] is unused.
struct WeightedInstance {
    Graph graph;
    ProblemKind kind = ProblemKind::CVC;
    std::vector<std::int64_t> weight;

    std::int64_t w(Vertex v) const { return weight[static_cast<std::size_t>(v)]; }
};

/// Instance with a pre-selected vertex set U; solutions extend U on V \ U.
struct PartialInstance {
    const WeightedInstance* instance = nullptr;
    VertexSet excluded;
};

/// Edge direction map: sink[e] is the endpoint covering edge e, or 0 when the
/// edge is not oriented. Indexed by EdgeId of the owning graph.
struct Orientation {
    std::vector<Vertex> sink;

    Orientation() = default;
    explicit Orientation(const Graph& g) : sink(static_cast<std::size_t>(g.m()), 0) {}

    bool oriented(EdgeId e) const { return sink[static_cast<std::size_t>(e)] != 0; }
    Vertex& operator[](EdgeId e) { return sink[static_cast<std::size_t>(e)]; }
    Vertex operator[](EdgeId e) const { return sink[static_cast<std::size_t>(e)]; }
};

std::vector<std::int32_t> indegrees(const Graph& g, const Orientation& o);
std::vector<std::int32_t> outdegrees(const Graph& g, const Orientation& o);

/// True iff every vertex of `scope` has indegree at most its capacity.
bool orientation_feasible(const Graph& g, const Orientation& o,
                          std::span<const std::int64_t> capacity, const VertexSet& scope);

/// Vertices with positive indegree, i.e. the cover induced by an orientation.
VertexSet covering_set(const Graph& g, const Orientation& o);

/// Connected components of G[V \ removed], each sorted, ordered by smallest
/// member.
std::vector<VertexSet> components_after_removal(const Graph& g, const VertexSet& removed);

VertexSet all_vertices(const Graph& g);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool contains(const VertexSet& s, Vertex v);
void normalize(VertexSet& s);

} // namespace twapprox
