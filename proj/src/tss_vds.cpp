#include "twapprox/tss_vds.hpp"

#include "twapprox/errors.hpp"

#include <cmath>
#include <string>

namespace twapprox {

VertexSet tss_activate(const Graph& g, std::span<const std::int64_t> t, const VertexSet& seed) {
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<char> active(n + 1, 0);
    std::vector<std::int64_t> seen(n + 1, 0);
    std::vector<Vertex> work;
    auto activate = [&](Vertex v) {
        if (active[static_cast<std::size_t>(v)]) return;
        active[static_cast<std::size_t>(v)] = 1;
        work.push_back(v);
    };
    for (Vertex v : seed) activate(v);
    for (Vertex v = 1; v <= g.n(); ++v)
        if (t[static_cast<std::size_t>(v)] <= 0) activate(v);
    while (!work.empty()) {
        Vertex v = work.back();
        work.pop_back();
        for (Vertex u : g.neighbors(v)) {
            auto ui = static_cast<std::size_t>(u);
            if (!active[ui] && ++seen[ui] >= t[ui]) activate(u);
        }
    }
    VertexSet out;
    for (Vertex v = 1; v <= g.n(); ++v)
        if (active[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

bool tss_is_target_set(const Graph& g, std::span<const std::int64_t> t, const VertexSet& seed) {
    return static_cast<Vertex>(tss_activate(g, t, seed).size()) == g.n();
}

bool vds_check(const Graph& g, std::span<const std::int64_t> t, const VertexSet& s) {
    std::vector<char> in(static_cast<std::size_t>(g.n()) + 1, 0);
    for (Vertex v : s) in[static_cast<std::size_t>(v)] = 1;
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (in[static_cast<std::size_t>(v)]) continue;
        std::int64_t c = 0;
        for (Vertex u : g.neighbors(v)) c += in[static_cast<std::size_t>(u)];
        if (c < t[static_cast<std::size_t>(v)]) return false;
    }
    return true;
}

namespace {

template <class Check>
std::optional<VertexSet> smallest_extension(const VertexSet& pool, std::int32_t l, std::uint64_t cap, Check&& ok) {
    std::uint64_t checks = 0;
    const auto top = std::min<std::size_t>(static_cast<std::size_t>(std::max(l, 0)), pool.size());
    if (l < 0) return std::nullopt;
    for (std::size_t k = 0; k <= top; ++k) {
        auto hit = first_subset(pool, k, [&](const VertexSet& s) {
            if (cap != 0 && ++checks > cap)
                throw ResourceError("brute-force partial solver exceeded " + std::to_string(cap) + " subset checks");
            return ok(s);
        });
        if (hit) return hit;
    }
    return std::nullopt;
}

} // namespace

std::optional<VertexSet> tss_partial_brute(const PartialInstance& p, std::int32_t l, std::uint64_t cap) {
    const auto& inst = *p.instance;
    const auto& g = inst.graph;
    VertexSet pool = set_difference(all_vertices(g), p.excluded);
    return smallest_extension(pool, l, cap, [&](const VertexSet& s) {
        return tss_is_target_set(g, inst.weight, set_union(s, p.excluded));
    });
}

std::optional<VertexSet> vds_partial_brute(const PartialInstance& p, std::int32_t l, std::uint64_t cap) {
    const auto& inst = *p.instance;
    const auto& g = inst.graph;
    VertexSet keep = set_difference(all_vertices(g), p.excluded);
    Graph h = g.induced(keep);
    std::vector<std::int64_t> t(keep.size() + 1, 0);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        std::int64_t in_u = 0;
        for (Vertex u : g.neighbors(keep[i])) in_u += contains(p.excluded, u);
        t[i + 1] = std::max<std::int64_t>(0, inst.w(keep[i]) - in_u);
    }
    auto local = smallest_extension(all_vertices(h), l, cap, [&](const VertexSet& s) { return vds_check(h, t, s); });
    if (!local) return std::nullopt;
    VertexSet out;
    for (Vertex v : *local) out.push_back(keep[static_cast<std::size_t>(v) - 1]);
    return out;
}

std::int32_t default_vds_budget(std::int32_t w, std::int64_t n) {
    if (n < 16) return 1;
    double ll = std::log2(std::log2(static_cast<double>(n)));
    double lll = std::log2(ll);
    auto b = static_cast<std::int64_t>(std::floor(static_cast<double>(w) * w * std::sqrt(ll / lll) + 1e-9));
    return static_cast<std::int32_t>(std::max<std::int64_t>(1, b));
}

} // namespace twapprox
