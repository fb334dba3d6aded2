#include "twapprox/maxflow.hpp"

#include "twapprox/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace twapprox {

FlowNetwork::FlowNetwork(Node nodes, Node source, Node sink)
    : source_(source), sink_(sink), node_count_(nodes) {
    if (source < 0 || sink < 0 || source >= nodes || sink >= nodes || source == sink)
        throw InputError("flow network needs distinct source and sink nodes");
}

FlowNetwork::Node FlowNetwork::add_node() {
    return node_count_++;
}

FlowNetwork::ArcId FlowNetwork::add_arc(Node from, Node to, std::int64_t capacity) {
    if (from < 0 || to < 0 || from >= nodes() || to >= nodes()) throw InputError("arc endpoint out of range");
    if (to == source_) throw InputError("arc into the source");
    if (from == sink_) throw InputError("arc out of the sink");
    if (capacity < 0) throw InputError("negative arc capacity");
    arcs_.push_back({from, to, capacity});
    return arcs() - 1;
}

struct MaxFlowSolver {
    struct Residual {
        std::int32_t to;
        std::int64_t cap;
        std::int32_t rev;  // index of the paired residual arc in adj[to]
    };

    explicit MaxFlowSolver(const FlowNetwork& net)
        : n(static_cast<std::size_t>(net.nodes())), s(net.source()), t(net.sink()), adj(n), where(net.arcs_.size()) {
        for (std::size_t i = 0; i < net.arcs_.size(); ++i) {
            const auto& a = net.arcs_[i];
            auto fi = adj[static_cast<std::size_t>(a.from)].size();
            auto ri = adj[static_cast<std::size_t>(a.to)].size();
            adj[static_cast<std::size_t>(a.from)].push_back({a.to, a.capacity, static_cast<std::int32_t>(ri)});
            adj[static_cast<std::size_t>(a.to)].push_back({a.from, 0, static_cast<std::int32_t>(fi)});
            where[i] = {a.from, static_cast<std::int32_t>(fi)};
        }
    }

    bool levels() {
        level.assign(n, -1);
        std::deque<std::int32_t> q{s};
        level[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            auto x = q.front();
            q.pop_front();
            for (const auto& r : adj[static_cast<std::size_t>(x)])
                if (r.cap > 0 && level[static_cast<std::size_t>(r.to)] < 0) {
                    level[static_cast<std::size_t>(r.to)] = level[static_cast<std::size_t>(x)] + 1;
                    q.push_back(r.to);
                }
        }
        return level[static_cast<std::size_t>(t)] >= 0;
    }

    std::int64_t push(std::int32_t x, std::int64_t limit) {
        if (x == t) return limit;
        auto& list = adj[static_cast<std::size_t>(x)];
        for (auto& i = iter[static_cast<std::size_t>(x)]; i < list.size(); ++i) {
            auto& r = list[i];
            if (r.cap <= 0 || level[static_cast<std::size_t>(r.to)] != level[static_cast<std::size_t>(x)] + 1) continue;
            std::int64_t got = push(r.to, std::min(limit, r.cap));
            if (got > 0) {
                r.cap -= got;
                adj[static_cast<std::size_t>(r.to)][static_cast<std::size_t>(r.rev)].cap += got;
                return got;
            }
        }
        return 0;
    }

    FlowResult run(const FlowNetwork& net) {
        FlowResult res;
        while (levels()) {
            iter.assign(n, 0);
            while (std::int64_t f = push(s, std::numeric_limits<std::int64_t>::max())) res.value += f;
        }
        res.flow.resize(where.size());
        for (std::size_t i = 0; i < where.size(); ++i) {
            const auto& r = adj[static_cast<std::size_t>(where[i].first)][static_cast<std::size_t>(where[i].second)];
            res.flow[i] = net.arcs_[i].capacity - r.cap;
        }
        res.source_side.assign(n, false);
        for (std::size_t i = 0; i < n; ++i) res.source_side[i] = level[i] >= 0;
        return res;
    }

    std::size_t n;
    std::int32_t s, t;
    std::vector<std::vector<Residual>> adj;
    std::vector<std::pair<std::int32_t, std::int32_t>> where;
    std::vector<std::int32_t> level;
    std::vector<std::size_t> iter;
};

FlowResult max_flow(const FlowNetwork& net) {
    MaxFlowSolver solver(net);
    return solver.run(net);
}

} // namespace twapprox
