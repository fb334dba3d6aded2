#pragma once

#include <cstdint>
#include <vector>

namespace twapprox {

/// Directed network with integer capacities. Node ids are dense from 0.
class FlowNetwork {
public:
    using Node = std::int32_t;
    using ArcId = std::int32_t;

    FlowNetwork(Node nodes, Node source, Node sink);

    Node add_node();
    /// Arcs into the source or out of the sink are rejected (InputError).
    ArcId add_arc(Node from, Node to, std::int64_t capacity);

    Node nodes() const { return node_count_; }
    Node source() const { return source_; }
    Node sink() const { return sink_; }
    ArcId arcs() const { return static_cast<ArcId>(arcs_.size()); }

    struct Arc {
        Node from;
        Node to;
        std::int64_t capacity;
    };
    const Arc& arc(ArcId a) const { return arcs_[static_cast<std::size_t>(a)]; }

private:
    friend struct MaxFlowSolver;
    Node source_, sink_;
    std::vector<Arc> arcs_;
    Node node_count_;
};

struct FlowResult {
    std::int64_t value = 0;
    std::vector<std::int64_t> flow;  // per arc, in add_arc order
    /// Nodes reachable from the source in the final residual graph; the arcs
    /// leaving this set form a minimum cut.
    std::vector<bool> source_side;
};

/// Dinic's algorithm: BFS level graph plus blocking flow by DFS.
FlowResult max_flow(const FlowNetwork& net);

} // namespace twapprox
