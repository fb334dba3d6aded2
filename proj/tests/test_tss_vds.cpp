#include "support.hpp"

#include "twapprox/errors.hpp"
#include "twapprox/oracles.hpp"
#include "twapprox/tss_vds.hpp"

#include <doctest.h>

using namespace twapprox;
using namespace twapprox::testing;

namespace {

VertexSet random_subset(const Graph& g, Rng& rng, std::int64_t num, std::int64_t den) {
    VertexSet s;
    for (Vertex v = 1; v <= g.n(); ++v)
        if (rng.chance(num, den)) s.push_back(v);
    return s;
}

bool subset_of(const VertexSet& a, const VertexSet& b) { return set_difference(a, b).empty(); }

} // namespace

TEST_SUITE("tss-vds") {

TEST_CASE("activation closure examples") {
    auto tri = complete(3);
    CHECK(tss_activate(tri, uniform_weights(3, 2), {1, 2, 3}) == VertexSet{1, 2, 3});
    CHECK(tss_activate(tri, uniform_weights(3, 1), {1}) == VertexSet{1, 2, 3});
    Graph iso(1, std::vector<std::pair<Vertex, Vertex>>{});
    CHECK(tss_activate(iso, weights({0}), {}) == VertexSet{1});
}

TEST_CASE("target set examples") {
    auto tri = complete(3);
    auto t2 = uniform_weights(3, 2);
    CHECK(tss_is_target_set(tri, t2, {1, 2, 3}));
    CHECK_FALSE(tss_is_target_set(tri, t2, {1}));
    CHECK(tss_is_target_set(tri, t2, {1, 2}));
}

TEST_CASE("activation is monotone and idempotent") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        auto s = sample(static_cast<Vertex>(6 + seed % 15), 2, seed % 2 == 0, seed, ProblemKind::TSS);
        const Graph& g = s.inst.graph;
        Rng rng(seed);
        VertexSet a = random_subset(g, rng, 1, 4);
        VertexSet b = set_union(a, random_subset(g, rng, 1, 4));
        auto ca = tss_activate(g, s.inst.weight, a);
        CHECK(subset_of(a, ca));
        CHECK(subset_of(ca, tss_activate(g, s.inst.weight, b)));
        CHECK(tss_activate(g, s.inst.weight, ca) == ca);
    }
}

TEST_CASE("vector domination examples") {
    auto tri = complete(3);
    CHECK(vds_check(tri, uniform_weights(3, 0), {}));
    CHECK(vds_check(tri, uniform_weights(3, 1), {1}));
    CHECK_FALSE(vds_check(path(3), uniform_weights(3, 1), {1}));
}

TEST_CASE("partial brute force for target sets") {
    auto inst = instance(complete(3), ProblemKind::TSS, uniform_weights(3, 2));
    CHECK(tss_partial_brute({&inst, {1, 2, 3}}, 0) == VertexSet{});
    CHECK_FALSE(tss_partial_brute({&inst, {}}, 1).has_value());
    auto two = tss_partial_brute({&inst, {}}, 2);
    REQUIRE(two.has_value());
    CHECK(two->size() == 2);
    CHECK(*two == VertexSet{1, 2});
}

TEST_CASE("partial brute force for vector domination") {
    auto one = instance(complete(3), ProblemKind::VDS, uniform_weights(3, 1));
    CHECK(vds_partial_brute({&one, {1, 2, 3}}, 0) == VertexSet{});
    auto single = vds_partial_brute({&one, {}}, 1);
    REQUIRE(single.has_value());
    CHECK(single->size() == 1);
    auto three = instance(complete(3), ProblemKind::VDS, uniform_weights(3, 3));
    CHECK_FALSE(vds_partial_brute({&three, {}}, 2).has_value());
}

TEST_CASE("partial solvers are minimal and respect the excluded set") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        for (ProblemKind kind : {ProblemKind::TSS, ProblemKind::VDS}) {
            auto s = sample(static_cast<Vertex>(6 + seed % 7), 2, seed % 2 == 1, seed, kind);
            const Graph& g = s.inst.graph;
            Rng rng(seed + 7);
            VertexSet u = random_subset(g, rng, 1, 5);
            PartialInstance p{&s.inst, u};
            auto check = [&](const VertexSet& w) {
                VertexSet full = set_union(w, u);
                return kind == ProblemKind::TSS ? tss_is_target_set(g, s.inst.weight, full)
                                                : vds_check(g, s.inst.weight, full);
            };
            const std::int32_t l = 3;
            auto got = kind == ProblemKind::TSS ? tss_partial_brute(p, l) : vds_partial_brute(p, l);
            // Full enumeration up to size l + 1.
            std::optional<std::size_t> best;
            VertexSet pool = set_difference(all_vertices(g), u);
            for (std::size_t k = 0; k <= l + 1 && !best; ++k)
                if (first_subset(pool, k, check)) best = k;
            if (got) {
                CHECK(check(*got));
                CHECK(set_intersection(*got, u).empty());
                REQUIRE(best.has_value());
                CHECK(got->size() == *best);
            } else {
                CHECK((!best || *best > static_cast<std::size_t>(l)));
            }
        }
    }
}

TEST_CASE("subset cap raises a resource error") {
    auto s = sample(14, 2, false, 9, ProblemKind::TSS);
    for (Vertex v = 1; v <= 14; ++v) s.inst.weight[static_cast<std::size_t>(v)] = s.inst.graph.degree(v) + 1;
    CHECK_THROWS_AS(tss_partial_brute({&s.inst, {}}, 5, 50), ResourceError);
}

TEST_CASE("default budget") {
    CHECK(default_vds_budget(1, 1 << 16) == 1);
    CHECK(default_vds_budget(2, 1 << 16) == 5);
    CHECK(default_vds_budget(3, 10) == 1);
}

TEST_CASE("separator unions of partial solutions are solutions") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        for (ProblemKind kind : {ProblemKind::TSS, ProblemKind::VDS}) {
            auto s = sample(static_cast<Vertex>(6 + seed % 9), 2, seed % 2 == 0, seed, kind);
            const Graph& g = s.inst.graph;
            Rng rng(seed * 3 + 1);
            VertexSet x = random_subset(g, rng, 1, 3);
            VertexSet all = x;
            for (const auto& part : components_after_removal(g, x)) {
                PartialInstance p{&s.inst, set_difference(all_vertices(g), part)};
                auto sol = kind == ProblemKind::TSS ? tss_partial_brute(p, static_cast<std::int32_t>(part.size()))
                                                    : vds_partial_brute(p, static_cast<std::int32_t>(part.size()));
                REQUIRE(sol.has_value());
                all = set_union(all, *sol);
            }
            CHECK((kind == ProblemKind::TSS ? tss_is_target_set(g, s.inst.weight, all)
                                            : vds_check(g, s.inst.weight, all)));
            // Supersets of solutions stay solutions.
            VertexSet more = set_union(all, random_subset(g, rng, 1, 2));
            CHECK((kind == ProblemKind::TSS ? tss_is_target_set(g, s.inst.weight, more)
                                            : vds_check(g, s.inst.weight, more)));
        }
    }
}

} // TEST_SUITE
