#include "twapprox/cvc_exact.hpp"

#include "twapprox/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace twapprox {

std::int32_t y_degree(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a, Vertex u) {
    std::int32_t m = 0;
    for (Vertex x : g.neighbors(u))
        if (ntd.in_y(a, x)) ++m;
    return m;
}

std::vector<EdgeId> scope_edges(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a) {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < g.m(); ++e)
        if (ntd.in_y(a, g.edge(e).u) || ntd.in_y(a, g.edge(e).v)) out.push_back(e);
    return out;
}

RecordTable leaf_table(std::size_t cap) {
    RecordTable t({}, 0, cap);
    t.offer({}, 0, Backref{Rule::Leaf});
    t.finalize();
    return t;
}

RecordTable introduce_table(const RecordTable& child, Vertex v, std::size_t cap) {
    VertexSet bag = child.bag();
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
    RecordTable t(bag, child.y_size(), cap);
    auto pos = static_cast<std::size_t>(t.position(v));
    for (std::size_t i = 0; i < child.size(); ++i) {
        const auto& e = child.entries()[i];
        RecordKey key = e.key;
        key.insert(key.begin() + static_cast<std::ptrdiff_t>(pos), 0);
        t.offer(key, e.k, Backref{Rule::Introduce, static_cast<std::int32_t>(i)});
    }
    t.finalize();
    return t;
}

RecordTable join_table(const RecordTable& left, const RecordTable& right, std::size_t cap) {
    if (left.bag() != right.bag()) throw InternalError("join children have different bags");
    RecordTable t(left.bag(), left.y_size() + right.y_size(), cap);
    bool swap = left.size() > right.size();
    const RecordTable& outer = swap ? right : left;
    const RecordTable& inner = swap ? left : right;
    RecordKey key(left.bag().size());
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const auto& a = outer.entries()[i];
        for (std::size_t j = 0; j < inner.size(); ++j) {
            const auto& b = inner.entries()[j];
            for (std::size_t p = 0; p < key.size(); ++p) key[p] = a.key[p] + b.key[p];
            auto li = static_cast<std::int32_t>(swap ? j : i);
            auto ri = static_cast<std::int32_t>(swap ? i : j);
            t.offer(key, a.k + b.k, Backref{Rule::Join, li, ri});
        }
    }
    t.finalize();
    return t;
}

namespace {

// Positions (in the parent bag) of v's bag neighbors.
std::vector<std::size_t> bag_neighbors(const Graph& g, const VertexSet& bag, Vertex v) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < bag.size(); ++p)
        if (g.adjacent(v, bag[p])) out.push_back(p);
    return out;
}

std::uint32_t spread(std::uint32_t sub, const std::vector<std::size_t>& pos) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < pos.size(); ++i)
        if (sub >> i & 1U) mask |= 1U << pos[i];
    return mask;
}

} // namespace

RecordTable forget_table(const RecordTable& child, Vertex v, const Graph& g, const NiceTreeDecomposition& ntd,
                         NodeId a, std::span<const std::int64_t> capacity, std::size_t cap) {
    VertexSet bag = child.bag();
    auto vpos = static_cast<std::size_t>(child.position(v));
    bag.erase(bag.begin() + static_cast<std::ptrdiff_t>(vpos));
    if (bag.size() > 31) throw ResourceError("bag of " + std::to_string(bag.size()) + " vertices is too wide");
    RecordTable t(bag, child.y_size() + 1, cap);

    const std::int32_t m = y_degree(g, ntd, a, v);
    const std::int64_t cv = capacity[static_cast<std::size_t>(v)];
    auto nb = bag_neighbors(g, bag, v);
    const std::uint32_t subsets = 1U << nb.size();

    RecordKey base(bag.size()), key(bag.size());
    for (std::size_t i = 0; i < child.size(); ++i) {
        const auto& e = child.entries()[i];
        const auto ci = static_cast<std::int32_t>(i);
        for (std::size_t p = 0, q = 0; p < e.key.size(); ++p)
            if (p != vpos) base[q++] = e.key[p];
        const std::int32_t d1v = e.key[vpos];
        if (d1v == m) t.offer(base, e.k, Backref{Rule::ForgetSkip, ci});
        // |Delta| <= c(v) - (m - d1(v)): v's spare capacity after its Y-edges.
        const std::int64_t spare = cv - (m - d1v);
        if (spare < 0) continue;
        for (std::uint32_t sub = 0; sub < subsets; ++sub) {
            if (std::popcount(sub) > spare) continue;
            key = base;
            for (std::size_t b = 0; b < nb.size(); ++b)
                if (sub >> b & 1U) ++key[nb[b]];
            t.offer(key, e.k + 1, Backref{Rule::ForgetTake, ci, -1, spread(sub, nb), d1v});
        }
    }
    t.finalize();
    return t;
}

std::vector<RecordTable> exact_tables(const Graph& g, const NiceTreeDecomposition& ntd,
                                      std::span<const std::int64_t> capacity, const ExactOptions& opt) {
    std::vector<RecordTable> tables(static_cast<std::size_t>(ntd.size()));
    auto at = [&](NodeId x) -> const RecordTable& { return tables[static_cast<std::size_t>(x)]; };
    try {
        for (NodeId a = 0; a < ntd.size(); ++a) {
            const auto& nd = ntd.node(a);
            RecordTable t;
            switch (nd.kind) {
            case NodeKind::Leaf: t = leaf_table(opt.table_cap); break;
            case NodeKind::Introduce: t = introduce_table(at(nd.children[0]), nd.vertex, opt.table_cap); break;
            case NodeKind::Join: t = join_table(at(nd.children[0]), at(nd.children[1]), opt.table_cap); break;
            case NodeKind::Forget:
                t = forget_table(at(nd.children[0]), nd.vertex, g, ntd, a, capacity, opt.table_cap);
                break;
            }
            tables[static_cast<std::size_t>(a)] = std::move(t);
        }
    } catch (const ResourceError& e) {
        throw ResourceError(std::string(e.what()) +
                            "; the exact DP is n^(w+O(1)), use solve-cvc-approx or a narrower decomposition");
    }
    return tables;
}

Orientation exact_witness(const Graph& g, const NiceTreeDecomposition& ntd, const std::vector<RecordTable>& tables,
                          NodeId a, std::int32_t entry) {
    Orientation o(g);
    std::vector<std::pair<NodeId, std::int32_t>> stack{{a, entry}};
    while (!stack.empty()) {
        auto [x, i] = stack.back();
        stack.pop_back();
        const auto& nd = ntd.node(x);
        const auto& back = tables[static_cast<std::size_t>(x)].entry(i).back;
        switch (back.rule) {
        case Rule::Leaf: break;
        case Rule::Introduce: stack.emplace_back(nd.children[0], back.left); break;
        case Rule::Join:
            stack.emplace_back(nd.children[0], back.left);
            stack.emplace_back(nd.children[1], back.right);
            break;
        case Rule::ForgetSkip:
        case Rule::ForgetTake: {
            // Edges from v into the remaining bag are decided here; the rest of
            // v's edges go to Y and were decided further down.
            Vertex v = nd.vertex;
            for (std::size_t p = 0; p < nd.bag.size(); ++p) {
                Vertex u = nd.bag[p];
                auto eid = g.edge_id(u, v);
                if (!eid) continue;
                bool take = back.rule == Rule::ForgetTake && (back.delta >> p & 1U);
                o[*eid] = take ? v : u;
            }
            stack.emplace_back(nd.children[0], back.left);
            break;
        }
        }
    }
    return o;
}

ExactSolution solve_exact(const Graph& g, const NiceTreeDecomposition& ntd, std::span<const std::int64_t> capacity,
                          const ExactOptions& opt) {
    auto tables = exact_tables(g, ntd, capacity, opt);
    ExactSolution sol;
    for (const auto& t : tables) sol.table_sizes.push_back(t.size());
    const auto& root = tables.back();
    auto hit = root.find({});
    if (!hit) return sol;
    sol.opt = root.entry(*hit).k;
    sol.orientation = exact_witness(g, ntd, tables, ntd.root(), *hit);
    sol.cover = covering_set(g, sol.orientation);
    for (EdgeId e = 0; e < g.m(); ++e)
        if (!sol.orientation.oriented(e)) throw InternalError("exact witness leaves an edge unoriented");
    if (!orientation_feasible(g, sol.orientation, capacity, all_vertices(g)) ||
        static_cast<std::int32_t>(sol.cover.size()) != *sol.opt)
        throw InternalError("exact witness does not realize the optimum");
    return sol;
}

} // namespace twapprox
