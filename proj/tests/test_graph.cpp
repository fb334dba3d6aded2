#include "support.hpp"

#include "twapprox/errors.hpp"
#include "twapprox/instance_io.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace twapprox;
using namespace twapprox::testing;

TEST_SUITE("graph-core") {

TEST_CASE("graph rejects loops, duplicates and unknown ids") {
    std::vector<std::pair<Vertex, Vertex>> loop{{1, 1}};
    std::vector<std::pair<Vertex, Vertex>> dup{{1, 2}, {2, 1}};
    std::vector<std::pair<Vertex, Vertex>> out{{1, 4}};
    CHECK_THROWS_AS(Graph(3, loop), InputError);
    CHECK_THROWS_AS(Graph(3, dup), InputError);
    CHECK_THROWS_AS(Graph(3, out), InputError);
}

TEST_CASE("adjacency is symmetric and matches degrees") {
    auto s = sample(14, 3, true, 5, ProblemKind::CVC);
    const Graph& g = s.inst.graph;
    std::int64_t sum = 0;
    for (Vertex v = 1; v <= g.n(); ++v) {
        sum += g.degree(v);
        CHECK(static_cast<std::size_t>(g.degree(v)) == g.neighbors(v).size());
        for (Vertex u : g.neighbors(v)) CHECK(g.adjacent(u, v));
    }
    CHECK(sum == 2 * g.m());
}

TEST_CASE("components after removal") {
    CHECK(components_after_removal(path(3), {2}) == std::vector<VertexSet>{{1}, {3}});
    CHECK(components_after_removal(complete(3), {}) == std::vector<VertexSet>{{1, 2, 3}});
    CHECK(components_after_removal(path(5), {3}) == std::vector<VertexSet>{{1, 2}, {4, 5}});
    CHECK_THROWS_AS(components_after_removal(path(3), {7}), InputError);
}

TEST_CASE("components partition the rest and are pairwise non-adjacent") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto s = sample(static_cast<Vertex>(8 + seed % 13), 2, seed % 2 == 0, seed, ProblemKind::CVC);
        const Graph& g = s.inst.graph;
        Rng rng(seed);
        VertexSet x;
        for (Vertex v = 1; v <= g.n(); ++v)
            if (rng.chance(1, 4)) x.push_back(v);
        auto parts = components_after_removal(g, x);
        std::vector<int> owner(static_cast<std::size_t>(g.n()) + 1, -1);
        VertexSet all;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (Vertex v : parts[i]) {
                owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
                all.push_back(v);
            }
        normalize(all);
        CHECK(all == set_difference(all_vertices(g), x));
        for (const Edge& e : g.edges()) {
            int a = owner[static_cast<std::size_t>(e.u)], b = owner[static_cast<std::size_t>(e.v)];
            if (a >= 0 && b >= 0) CHECK(a == b);
        }
    }
}

TEST_CASE("orientation feasibility") {
    Graph p = path(3);
    Orientation o(p);
    o[0] = 2;
    o[1] = 2;
    CHECK(orientation_feasible(p, o, weights({0, 2, 0}), {1, 2, 3}));
    CHECK_FALSE(orientation_feasible(p, o, weights({0, 1, 0}), {1, 2, 3}));
    Graph empty(0, std::vector<std::pair<Vertex, Vertex>>{});
    CHECK(orientation_feasible(empty, Orientation(empty), weights({}), {}));
}

TEST_CASE("orientation feasibility agrees with recomputed indegrees") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto s = sample(10, 2, false, seed, ProblemKind::CVC);
        const Graph& g = s.inst.graph;
        Rng rng(seed + 100);
        Orientation o(g);
        for (EdgeId e = 0; e < g.m(); ++e) o[e] = rng.chance(1, 2) ? g.edge(e).u : g.edge(e).v;
        auto in = indegrees(g, o);
        auto out = outdegrees(g, o);
        std::int64_t sin = 0, sout = 0;
        bool ok = true;
        for (Vertex v = 1; v <= g.n(); ++v) {
            sin += in[static_cast<std::size_t>(v)];
            sout += out[static_cast<std::size_t>(v)];
            ok = ok && in[static_cast<std::size_t>(v)] <= s.inst.w(v);
        }
        CHECK(sin == g.m());
        CHECK(sout == g.m());
        CHECK(orientation_feasible(g, o, s.inst.weight, all_vertices(g)) == ok);
    }
}

TEST_CASE("partial k-tree generator") {
    auto tri = generate_partial_ktree(3, 2, 1, 1, 99);
    CHECK(tri.graph.m() == 3);
    REQUIRE(tri.td.size() == 1);
    CHECK(tri.td.bags[0] == VertexSet{1, 2, 3});

    auto full = generate_partial_ktree(10, 2, 1, 1, 7);
    CHECK(full.graph.m() == 17);
    auto none = generate_partial_ktree(10, 2, 0, 1, 7);
    CHECK(none.graph.m() == 0);
    CHECK(validate(none.graph, none.td).empty());
    CHECK_THROWS_AS(generate_partial_ktree(2, 2, 1, 1, 1), InputError);

    auto again = generate_partial_ktree(10, 2, 1, 2, 7);
    CHECK(again.graph.edges() == generate_partial_ktree(10, 2, 1, 2, 7).graph.edges());
}

TEST_CASE("generated decompositions validate with width at most k") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto k = static_cast<std::int32_t>(1 + seed % 4);
        auto gg = generate_partial_ktree(static_cast<Vertex>(k + 2 + seed % 15), k, 1, 1 + seed % 2, seed);
        CHECK(validate(gg.graph, gg.td).empty());
        CHECK(gg.td.width() <= k);
    }
}

TEST_CASE("instance format round trip") {
    std::istringstream in("c comment\np cvc 3 2\nw 1 2\nw 3 1\ne 1 2\ne 2 3\n");
    auto inst = read_instance(in);
    CHECK(inst.kind == ProblemKind::CVC);
    CHECK(inst.graph.m() == 2);
    CHECK(inst.w(1) == 2);
    CHECK(inst.w(2) == 0);
    std::ostringstream out;
    write_instance(out, inst);
    std::istringstream back(out.str());
    auto again = read_instance(back);
    CHECK(instance_hash(again) == instance_hash(inst));

    std::istringstream bad_count("p cvc 3 2\ne 1 2\n");
    CHECK_THROWS_AS(read_instance(bad_count), InputError);
    std::istringstream bad_vertex("p tss 2 1\ne 1 5\n");
    CHECK_THROWS_AS(read_instance(bad_vertex), InputError);
    std::istringstream neg("p vds 2 0\nw 1 -1\n");
    CHECK_THROWS_AS(read_instance(neg), InputError);
}

} // TEST_SUITE
