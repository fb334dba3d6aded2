#include "twapprox/cvc_approx.hpp"

#include "twapprox/cvc_exact.hpp"
#include "twapprox/errors.hpp"
#include "twapprox/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

namespace twapprox {

ApproxDp::ApproxDp(const Graph& g, const NiceTreeDecomposition& ntd, std::span<const std::int64_t> capacity,
                   ErrorSchedule schedule, std::size_t table_cap)
    : g_(g), ntd_(ntd), cap_(capacity), schedule_(std::move(schedule)), arith_(schedule_.eps),
      table_cap_(table_cap) {}

void ApproxDp::run() {
    tables_.assign(static_cast<std::size_t>(ntd_.size()), RecordTable{});
    for (NodeId a = 0; a < ntd_.size(); ++a) {
        const auto& nd = ntd_.node(a);
        RecordTable t(nd.bag, ntd_.y_size(a), table_cap_);
        switch (nd.kind) {
        case NodeKind::Leaf: t.offer({}, 0, Backref{Rule::Leaf}); break;
        case NodeKind::Introduce: {
            const auto& child = table(nd.children[0]);
            auto pos = static_cast<std::ptrdiff_t>(t.position(nd.vertex));
            for (std::size_t i = 0; i < child.size(); ++i) {
                RecordKey key = child.entries()[i].key;
                key.insert(key.begin() + pos, RoundedValue::zero().code());
                t.offer(key, child.entries()[i].k, Backref{Rule::Introduce, static_cast<std::int32_t>(i)});
            }
            break;
        }
        case NodeKind::Join: {
            const auto& l = table(nd.children[0]);
            const auto& r = table(nd.children[1]);
            bool swap = l.size() > r.size();
            const auto& outer = swap ? r : l;
            const auto& inner = swap ? l : r;
            RecordKey key(nd.bag.size());
            for (std::size_t i = 0; i < outer.size(); ++i) {
                const auto& x = outer.entries()[i];
                for (std::size_t j = 0; j < inner.size(); ++j) {
                    const auto& y = inner.entries()[j];
                    for (std::size_t p = 0; p < key.size(); ++p)
                        key[p] = arith_.add(RoundedValue::from_code(x.key[p]), RoundedValue::from_code(y.key[p]))
                                     .code();
                    auto li = static_cast<std::int32_t>(swap ? j : i);
                    auto ri = static_cast<std::int32_t>(swap ? i : j);
                    t.offer(key, x.k + y.k, Backref{Rule::Join, li, ri});
                }
            }
            break;
        }
        case NodeKind::Forget: t = forget(a); break;
        }
        t.finalize();
        tables_[static_cast<std::size_t>(a)] = std::move(t);
    }
}

std::optional<RecordKey> ApproxDp::tested_pair(NodeId child, const RecordKey& key, std::size_t vpos,
                                               std::int32_t dv) {
    const auto& bag = ntd_.node(child).bag;
    Rational div = schedule_.eps_h(ntd_.node(child).height) + 1;
    RecordKey d_t(key.size());
    for (std::size_t p = 0; p < key.size(); ++p) {
        if (p == vpos) {
            d_t[p] = dv;
            continue;
        }
        auto c = arith_.ceil_div(RoundedValue::from_code(key[p]), div);
        if (c > y_degree(g_, ntd_, child, bag[p])) return std::nullopt;
        d_t[p] = static_cast<std::int32_t>(c);
    }
    return d_t;
}

bool ApproxDp::test(NodeId child, const RecordKey& d_t) {
    auto [it, fresh] = flow_memo_.try_emplace({child, d_t}, false);
    if (fresh) {
        ++flow_calls_;
        it->second = feasibility_test(g_, ntd_, cap_, child, d_t);
    }
    return it->second;
}

RecordTable ApproxDp::forget(NodeId a) {
    const auto& nd = ntd_.node(a);
    const NodeId c = nd.children[0];
    const auto& child = table(c);
    const Vertex v = nd.vertex;
    const auto vpos = static_cast<std::size_t>(child.position(v));
    if (nd.bag.size() > 31) throw ResourceError("bag of " + std::to_string(nd.bag.size()) + " vertices is too wide");
    RecordTable t(nd.bag, ntd_.y_size(a), table_cap_);

    const Rational eps_prev = schedule_.eps_h(ntd_.node(c).height);
    const std::int32_t m = y_degree(g_, ntd_, a, v);
    const std::int64_t cv = cap_[static_cast<std::size_t>(v)];
    std::vector<std::size_t> nb;
    for (std::size_t p = 0; p < nd.bag.size(); ++p)
        if (g_.adjacent(v, nd.bag[p])) nb.push_back(p);

    RecordKey base(nd.bag.size()), key;
    for (std::size_t i = 0; i < child.size(); ++i) {
        const auto& e = child.entries()[i];
        const auto ci = static_cast<std::int32_t>(i);
        for (std::size_t p = 0, q = 0; p < e.key.size(); ++p)
            if (p != vpos) base[q++] = e.key[p];
        const RoundedValue dv = RoundedValue::from_code(e.key[vpos]);

        // (1a) then (1b).
        if (arith_.close(Rational(m), dv, eps_prev)) {
            auto d_t = tested_pair(c, e.key, vpos, m);
            if (d_t && test(c, *d_t)) t.offer(base, e.k, Backref{Rule::ForgetSkip, ci, -1, 0, m});
        }
        // Both (2a) and (2b) only get easier as A shrinks, and the product does
        // not depend on A, so the smallest admissible A decides each |Delta|.
        std::vector<std::int8_t> ok_by_size(nb.size() + 1, -1);
        for (std::uint32_t sub = 0; sub < (1U << nb.size()); ++sub) {
            const auto sz = std::popcount(sub);
            if (sz > cv) continue;
            const auto A = static_cast<std::int32_t>(std::max<std::int64_t>(0, m - cv + sz));
            auto& ok = ok_by_size[static_cast<std::size_t>(sz)];
            if (ok < 0) {
                ok = 0;
                if (A == 0 || arith_.compare(dv, Rational(A) / (eps_prev + 1)) >= 0) {
                    auto d_t = tested_pair(c, e.key, vpos, A);
                    ok = d_t && test(c, *d_t) ? 1 : 0;
                }
            }
            if (ok == 0) continue;
            key = base;
            std::uint32_t mask = 0;
            for (std::size_t b = 0; b < nb.size(); ++b) {
                if (!(sub >> b & 1U)) continue;
                key[nb[b]] = arith_.add_one(RoundedValue::from_code(key[nb[b]])).code();
                mask |= 1U << nb[b];
            }
            t.offer(key, e.k + 1, Backref{Rule::ForgetTake, ci, -1, mask, A});
        }
    }
    flow_memo_.clear();
    return t;
}

namespace {

std::int32_t y_outdegree(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a, const Orientation& o, Vertex v) {
    std::int32_t d = 0;
    auto nb = g.neighbors(v);
    auto inc = g.incident(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
        if (ntd.in_y(a, nb[i]) && o[inc[i]] == nb[i]) ++d;
    return d;
}

// Raises v's outdegree in G_a one unit at a time by walking the edges where
// `o` and `ref` disagree, oriented as in `ref`. Cycles are copied from `ref`
// and dropped; a walk ending in a forgotten vertex y is copied too, which
// moves one unit of indegree onto y without exceeding ref's indegree there.
// Bag vertices other than v keep their outdegree.
void raise_outdegree(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a, Orientation& o,
                     const Orientation& ref, Vertex v, std::int32_t target) {
    const auto scope = scope_edges(g, ntd, a);
    while (y_outdegree(g, ntd, a, o, v) < target) {
        std::unordered_map<Vertex, std::vector<EdgeId>> out;
        for (EdgeId e : scope)
            if (o[e] != ref[e]) out[Graph::other(g.edge(e), ref[e])].push_back(e);
        std::vector<Vertex> path{v};
        std::vector<EdgeId> walk;
        std::unordered_map<Vertex, std::size_t> at{{v, 0}};
        for (;;) {
            auto it = out.find(path.back());
            if (it == out.end() || it->second.empty()) {
                if (path.size() == 1 || !ntd.in_y(a, path.back()))
                    throw InternalError("outdegree raise walk stalled at a bag vertex");
                for (EdgeId e : walk) o[e] = ref[e];
                break;
            }
            EdgeId e = it->second.back();
            Vertex next = ref[e];
            walk.push_back(e);
            if (auto hit = at.find(next); hit != at.end()) {
                for (std::size_t i = hit->second; i < walk.size(); ++i) o[walk[i]] = ref[walk[i]];
                break;  // rebuild and walk again
            }
            at.emplace(next, path.size());
            path.push_back(next);
        }
    }
}

} // namespace

ApproxDp::Counterpart ApproxDp::counterpart(NodeId a, std::int32_t entry) {
    const auto& nd = ntd_.node(a);
    const auto& t = table(a);
    const auto& back = t.entry(entry).back;
    switch (back.rule) {
    case Rule::Leaf: return {{}, 0, Orientation(g_)};
    case Rule::Introduce: {
        auto cp = counterpart(nd.children[0], back.left);
        cp.d.insert(cp.d.begin() + t.position(nd.vertex), 0);
        return cp;
    }
    case Rule::Join: {
        auto l = counterpart(nd.children[0], back.left);
        auto r = counterpart(nd.children[1], back.right);
        for (std::size_t p = 0; p < l.d.size(); ++p) l.d[p] += r.d[p];
        l.k += r.k;
        for (EdgeId e = 0; e < g_.m(); ++e)
            if (r.orientation.oriented(e)) l.orientation[e] = r.orientation[e];
        return l;
    }
    case Rule::ForgetSkip:
    case Rule::ForgetTake: break;
    }

    const NodeId c = nd.children[0];
    const Vertex v = nd.vertex;
    const auto& ctab = table(c);
    const auto vpos = static_cast<std::size_t>(ctab.position(v));
    auto cp = counterpart(c, back.left);
    auto d_t = tested_pair(c, ctab.entry(back.left).key, vpos, back.a);
    if (!d_t) throw InternalError("tested pair vanished during reconstruction");
    for (std::size_t p = 0; p < d_t->size(); ++p)
        if (p != vpos && (*d_t)[p] > cp.d[p]) throw InternalError("exact counterpart is not close to its record");
    auto ref = feasibility_orientation(g_, ntd_, cap_, c, *d_t);
    if (!ref) throw InternalError("tested pair failed its flow test during reconstruction");

    const std::int32_t raise = std::max(0, (*d_t)[vpos] - cp.d[vpos]);
    RecordKey lowered = *d_t;
    lowered[vpos] = std::min((*d_t)[vpos], cp.d[vpos]);
    lower_outdegrees(g_, ntd_, c, cp.orientation, lowered);
    raise_outdegree(g_, ntd_, c, cp.orientation, *ref, v, (*d_t)[vpos]);
    std::int32_t k = std::min(cp.k + raise, ntd_.y_size(c));

    Counterpart out;
    out.orientation = std::move(cp.orientation);
    out.d.reserve(nd.bag.size());
    for (std::size_t p = 0, q = 0; p < d_t->size(); ++p) {
        if (p == vpos) continue;
        Vertex u = nd.bag[q];
        std::int32_t du = (*d_t)[p];
        if (auto eid = g_.edge_id(u, v)) {
            bool take = back.rule == Rule::ForgetTake && (back.delta >> q & 1U);
            out.orientation[*eid] = take ? v : u;
            if (take) ++du;
        }
        out.d.push_back(du);
        ++q;
    }
    out.k = back.rule == Rule::ForgetTake ? k + 1 : k;
    return out;
}

ApproxSolution solve_cvc_approx(const Graph& g, const NiceTreeDecomposition& ntd,
                                std::span<const std::int64_t> capacity, const ApproxOptions& opt) {
    ApproxSolution sol;
    sol.schedule = make_schedule(ntd.width(), g.n(), ntd.root_height(), opt.epsilon);
    ApproxDp dp(g, ntd, capacity, sol.schedule, opt.table_cap);
    try {
        dp.run();
    } catch (const ResourceError& e) {
        throw ResourceError(std::string(e.what()) + "; raise --table-cap or pass a larger --epsilon");
    }
    for (const auto& t : dp.tables()) sol.table_sizes.push_back(t.size());
    sol.flow_calls = dp.flow_calls();

    const auto& root = dp.tables().back();
    auto hit = root.find({});
    if (!hit) return sol;
    sol.feasible = true;
    sol.raw_min = root.entry(*hit).k;
    const Rational factor = sol.schedule.delta_root() + 1;
    sol.k_hat_min = factor * sol.raw_min;
    sol.k_hat_ceil = ceil_to_int(sol.k_hat_min);
    sol.opt_lower = ceil_to_int(Rational(sol.raw_min) / factor);

    auto cp = dp.counterpart(ntd.root(), *hit);
    sol.orientation = std::move(cp.orientation);
    for (EdgeId e = 0; e < g.m(); ++e)
        if (!sol.orientation.oriented(e)) throw InternalError("approximate witness leaves an edge unoriented");
    if (!orientation_feasible(g, sol.orientation, capacity, all_vertices(g)))
        throw InternalError("approximate witness exceeds a capacity");
    sol.cover = covering_set(g, sol.orientation);
    if (static_cast<std::int32_t>(sol.cover.size()) > cp.k || Rational(cp.k) > sol.k_hat_min)
        throw InternalError("approximate witness is larger than its bound");
    return sol;
}

ClosenessResult closeness_check(const RecordTable& exact, const RecordTable& approx, EpsilonArithmetic& arith,
                                const Rational& eps_h, const Rational& delta_h) {
    std::map<std::pair<std::int32_t, std::int32_t>, bool> memo;
    auto close_key = [&](const RecordKey& d, const RecordKey& dh) {
        for (std::size_t p = 0; p < d.size(); ++p) {
            auto [it, fresh] = memo.try_emplace({d[p], dh[p]}, false);
            if (fresh) it->second = arith.close(Rational(d[p]), RoundedValue::from_code(dh[p]), eps_h);
            if (!it->second) return false;
        }
        return true;
    };
    const Rational factor = delta_h + 1;
    ClosenessResult r;
    for (const auto& e : exact.entries()) {
        bool found = false;
        for (const auto& a : approx.entries())
            if (Rational(a.k) <= factor * e.k && close_key(e.key, a.key)) {
                found = true;
                break;
            }
        r.a_holds = r.a_holds && found;
    }
    for (const auto& a : approx.entries()) {
        bool found = false;
        for (const auto& e : exact.entries())
            if (Rational(e.k) <= factor * a.k && close_key(e.key, a.key)) {
                found = true;
                break;
            }
        r.b_holds = r.b_holds && found;
    }
    return r;
}

} // namespace twapprox
