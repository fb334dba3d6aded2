#include "twapprox/framework.hpp"

#include "twapprox/errors.hpp"
#include "twapprox/tss_vds.hpp"

#include <algorithm>

namespace twapprox {

bool TssProblem::is_solution(const WeightedInstance& inst, const VertexSet& s) const {
    return tss_is_target_set(inst.graph, inst.weight, s);
}

std::optional<VertexSet> TssProblem::solve_partial(const PartialInstance& p, std::int32_t l) const {
    return tss_partial_brute(p, l, cap_);
}

bool VdsProblem::is_solution(const WeightedInstance& inst, const VertexSet& s) const {
    return vds_check(inst.graph, inst.weight, s);
}

std::optional<VertexSet> VdsProblem::solve_partial(const PartialInstance& p, std::int32_t l) const {
    return vds_partial_brute(p, l, cap_);
}

namespace {

VertexSet lift(const VertexSet& local, const VertexSet& keep) {
    if (keep.empty()) return local;
    VertexSet out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(keep[static_cast<std::size_t>(v) - 1]);
    return out;
}

} // namespace

GoodResult is_l_good(const SubsetProblem& prob, const WeightedInstance& inst, const NiceTreeDecomposition& ntd,
                     NodeId a, std::int32_t l, const VertexSet& keep) {
    VertexSet y = lift(ntd.y_set(a), keep);
    PartialInstance p{&inst, set_difference(all_vertices(inst.graph), y)};
    GoodResult r;
    r.solution = prob.solve_partial(p, l);
    r.good = r.solution.has_value();
    return r;
}

FrameworkResult solve_framework(const SubsetProblem& prob, const WeightedInstance& inst, const TreeDecomposition& td,
                                std::int32_t l, const VertexSet& excluded) {
    const Graph& g = inst.graph;
    FrameworkResult res;
    res.l = l;

    VertexSet d = excluded;
    normalize(d);
    VertexSet committed;
    TreeDecomposition cur = td;  // bags in instance ids
    for (;;) {
        VertexSet keep = set_difference(all_vertices(g), d);
        Graph h = g.induced(keep);
        TreeDecomposition local;
        local.tree_edges = cur.tree_edges;
        for (const auto& bag : cur.bags) {
            VertexSet lb;
            for (Vertex v : bag) {
                auto it = std::lower_bound(keep.begin(), keep.end(), v);
                if (it == keep.end() || *it != v) throw InternalError("bag vertex outside the residual graph");
                lb.push_back(static_cast<Vertex>(it - keep.begin()) + 1);
            }
            local.bags.push_back(std::move(lb));
        }
        NiceTreeDecomposition ntd;
        try {
            ntd = make_nice(h, local);
        } catch (const InputError& e) {
            throw InternalError(std::string("residual decomposition invalid: ") + e.what());
        }
        if (res.rounds == 0) {
            res.width = std::max(ntd.width(), 0);
            res.ratio_bound = Rational(1) + Rational(res.width + 1, l + 1);
            res.ratio_bound.canonicalize();
        }
        ++res.rounds;
        if (res.rounds > g.n() + 1) throw InternalError("framework made no progress");

        std::vector<GoodResult> good(static_cast<std::size_t>(ntd.size()));
        for (NodeId a = 0; a < ntd.size(); ++a) good[static_cast<std::size_t>(a)] = is_l_good(prob, inst, ntd, a, l, keep);

        const auto& root = good[static_cast<std::size_t>(ntd.root())];
        if (root.good) {
            res.solution = set_union(committed, *root.solution);
            return res;
        }
        NodeId pick = -1;
        for (NodeId a = 0; a < ntd.size(); ++a) {
            if (good[static_cast<std::size_t>(a)].good) continue;
            if (pick < 0 || ntd.node(a).height < ntd.node(pick).height) pick = a;
        }
        res.bad_node_heights.push_back(ntd.node(pick).height);
        if (ntd.node(pick).kind == NodeKind::Leaf) return res;

        VertexSet f;
        for (NodeId c : ntd.node(pick).children) {
            const auto& gc = good[static_cast<std::size_t>(c)];
            if (!gc.good) throw InternalError("chosen node has a child that is not l-good");
            committed = set_union(committed, set_union(*gc.solution, lift(ntd.node(c).bag, keep)));
            f = set_union(f, lift(ntd.v_set(c), keep));
        }
        if (f.empty()) throw InternalError("framework round removed no vertices");
        d = set_union(d, f);
        for (auto& bag : cur.bags) bag = set_difference(bag, f);
    }
}

} // namespace twapprox
