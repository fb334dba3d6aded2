#include "twapprox/feasibility.hpp"

#include "twapprox/cvc_exact.hpp"
#include "twapprox/errors.hpp"
#include "twapprox/maxflow.hpp"

namespace twapprox {

namespace {

struct ScopeFlow {
    std::vector<EdgeId> edges;
    std::vector<FlowNetwork::ArcId> to_u, to_v;  // per scope edge
    FlowResult result;
    bool saturated = false;
};

std::optional<ScopeFlow> run_scope_flow(const Graph& g, const NiceTreeDecomposition& ntd,
                                        std::span<const std::int64_t> capacity, NodeId a, const RecordKey& d_t) {
    const auto& bag = ntd.node(a).bag;
    if (d_t.size() != bag.size()) throw InternalError("d_t does not match the bag");
    ScopeFlow sf;
    sf.edges = scope_edges(g, ntd, a);

    FlowNetwork net(2, 0, 1);
    std::vector<FlowNetwork::Node> vnode(static_cast<std::size_t>(g.n()) + 1, -1);
    auto vertex_node = [&](Vertex x) {
        auto& slot = vnode[static_cast<std::size_t>(x)];
        if (slot < 0) slot = net.add_node();
        return slot;
    };
    for (std::size_t p = 0; p < bag.size(); ++p) {
        std::int64_t room = y_degree(g, ntd, a, bag[p]) - d_t[p];
        if (d_t[p] < 0 || room < 0) return std::nullopt;
        net.add_arc(vertex_node(bag[p]), 1, room);
    }
    for (EdgeId e : sf.edges) {
        const Edge& ed = g.edge(e);
        auto en = net.add_node();
        net.add_arc(0, en, 1);
        sf.to_u.push_back(net.add_arc(en, vertex_node(ed.u), 1));
        sf.to_v.push_back(net.add_arc(en, vertex_node(ed.v), 1));
    }
    for (Vertex y : ntd.y_set(a)) net.add_arc(vertex_node(y), 1, capacity[static_cast<std::size_t>(y)]);

    sf.result = max_flow(net);
    sf.saturated = sf.result.value == static_cast<std::int64_t>(sf.edges.size());
    return sf;
}

} // namespace

bool feasibility_test(const Graph& g, const NiceTreeDecomposition& ntd, std::span<const std::int64_t> capacity,
                      NodeId a, const RecordKey& d_t) {
    auto sf = run_scope_flow(g, ntd, capacity, a, d_t);
    return sf && sf->saturated;
}

RecordKey bag_outdegrees(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a, const Orientation& o) {
    const auto& bag = ntd.node(a).bag;
    RecordKey d(bag.size(), 0);
    for (std::size_t p = 0; p < bag.size(); ++p) {
        auto nb = g.neighbors(bag[p]);
        auto inc = g.incident(bag[p]);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (ntd.in_y(a, nb[i]) && o[inc[i]] == nb[i]) ++d[p];
    }
    return d;
}

void lower_outdegrees(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a, Orientation& o,
                      const RecordKey& target) {
    const auto& bag = ntd.node(a).bag;
    RecordKey d = bag_outdegrees(g, ntd, a, o);
    for (std::size_t p = 0; p < bag.size(); ++p) {
        if (d[p] < target[p]) throw InternalError("lower_outdegrees asked to raise an outdegree");
        auto nb = g.neighbors(bag[p]);
        auto inc = g.incident(bag[p]);
        for (std::size_t i = 0; i < nb.size() && d[p] > target[p]; ++i) {
            if (ntd.in_y(a, nb[i]) && o[inc[i]] == nb[i]) {
                o[inc[i]] = bag[p];
                --d[p];
            }
        }
    }
}

std::optional<Orientation> feasibility_orientation(const Graph& g, const NiceTreeDecomposition& ntd,
                                                   std::span<const std::int64_t> capacity, NodeId a,
                                                   const RecordKey& d_t) {
    auto sf = run_scope_flow(g, ntd, capacity, a, d_t);
    if (!sf || !sf->saturated) return std::nullopt;
    Orientation o(g);
    for (std::size_t i = 0; i < sf->edges.size(); ++i) {
        const Edge& ed = g.edge(sf->edges[i]);
        o[sf->edges[i]] = sf->result.flow[static_cast<std::size_t>(sf->to_u[i])] > 0 ? ed.u : ed.v;
    }
    lower_outdegrees(g, ntd, a, o, d_t);
    return o;
}

} // namespace twapprox
