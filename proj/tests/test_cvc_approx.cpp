#include "support.hpp"

#include "twapprox/cvc_approx.hpp"
#include "twapprox/cvc_exact.hpp"
#include "twapprox/errors.hpp"
#include "twapprox/feasibility.hpp"
#include "twapprox/oracles.hpp"

#include <doctest.h>

using namespace twapprox;
using namespace twapprox::testing;

namespace {

// All vectors d with 0 <= d[p] <= bound[p].
template <class F>
void for_each_vector(const RecordKey& bound, F&& f) {
    RecordKey d(bound.size(), 0);
    for (;;) {
        f(d);
        std::size_t p = 0;
        while (p < d.size() && d[p] == bound[p]) d[p++] = 0;
        if (p == d.size()) return;
        ++d[p];
    }
}

Rational inflated_eps(std::int32_t h0) { return Rational(1, 20 * (h0 + 1) * std::max(h0, 1)); }

} // namespace

TEST_SUITE("cvc-approx") {

TEST_CASE("flow test on trivial nodes") {
    auto p = path(3);
    auto ntd = nice_of(p);
    auto c = weights({0, 1, 0});
    CHECK(feasibility_test(p, ntd, c, 0, {}));
    CHECK_FALSE(feasibility_test(p, ntd, c, ntd.root(), {}));
    auto ok = uniform_weights(3, 1);
    CHECK(feasibility_test(p, ntd, ok, ntd.root(), {}));
}

TEST_CASE("flow test agrees with orientation enumeration") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto k = static_cast<std::int32_t>(1 + seed % 3);
        auto s = sample(static_cast<Vertex>(k + 2 + seed % 8), k, seed % 2 == 0, seed, ProblemKind::CVC);
        const Graph& g = s.inst.graph;
        for (NodeId a = 0; a < s.ntd.size(); ++a) {
            if (scope_edges(g, s.ntd, a).size() > 12) continue;
            auto rec = enumerate_records(g, s.ntd, s.inst.weight, a);
            const auto& bag = s.ntd.node(a).bag;
            RecordKey bound;
            for (Vertex u : bag) bound.push_back(y_degree(g, s.ntd, a, u));
            for_each_vector(bound, [&](const RecordKey& d) {
                bool member = rec.count(d) > 0;
                CHECK(feasibility_test(g, s.ntd, s.inst.weight, a, d) == member);
                auto o = feasibility_orientation(g, s.ntd, s.inst.weight, a, d);
                CHECK(o.has_value() == member);
                if (o) {
                    CHECK(bag_outdegrees(g, s.ntd, a, *o) == d);
                    CHECK(orientation_feasible(g, *o, s.inst.weight, s.ntd.y_set(a)));
                }
            });
        }
    }
}

TEST_CASE("leaf table of the rounded DP") {
    auto p = path(2);
    auto ntd = nice_of(p);
    ApproxDp dp(p, ntd, uniform_weights(2, 1), make_schedule(1, 2, ntd.root_height()));
    dp.run();
    REQUIRE(dp.table(0).size() == 1);
    CHECK(dp.table(0).entries()[0].key.empty());
    CHECK(dp.table(0).entries()[0].k == 0);
}

TEST_CASE("single edge with unit capacities") {
    auto p = path(2);
    auto ntd = nice_of(p);
    auto sol = solve_cvc_approx(p, ntd, uniform_weights(2, 1));
    REQUIRE(sol.feasible);
    CHECK(sol.raw_min == 1);
    CHECK(sol.k_hat_min == sol.schedule.delta_root() + 1);
    CHECK(sol.k_hat_min >= 1);
    CHECK(sol.opt_lower == 1);
    CHECK(sol.cover.size() == 1);
}

TEST_CASE("triangle with unit capacities") {
    auto tri = complete(3);
    auto ntd = nice_of(tri);
    auto sol = solve_cvc_approx(tri, ntd, uniform_weights(3, 1));
    REQUIRE(sol.feasible);
    Rational f = sol.schedule.delta_root() + 1;
    CHECK(sol.k_hat_min >= 3);
    CHECK(sol.k_hat_min <= f * f * 3);
}

TEST_CASE("infeasible instances agree with the exact DP") {
    auto p = path(3);
    auto ntd = nice_of(p);
    CHECK_FALSE(solve_cvc_approx(p, ntd, weights({0, 1, 0})).feasible);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto s = sample(static_cast<Vertex>(5 + seed % 8), 2, seed % 2 == 0, seed, ProblemKind::CVC, 1);
        bool exact = solve_exact(s.inst.graph, s.ntd, s.inst.weight).opt.has_value();
        CHECK(solve_cvc_approx(s.inst.graph, s.ntd, s.inst.weight).feasible == exact);
    }
}

TEST_CASE("epsilon override is validated") {
    auto s = sample(10, 2, false, 1, ProblemKind::CVC);
    ApproxOptions o;
    o.epsilon = Rational(1, 2);
    CHECK_THROWS_AS(solve_cvc_approx(s.inst.graph, s.ntd, s.inst.weight, o), ConfigError);
    o.epsilon = Rational(1, 1000000);
    CHECK(solve_cvc_approx(s.inst.graph, s.ntd, s.inst.weight, o).schedule.overridden);
}

TEST_CASE("table cap raises a resource error") {
    auto s = sample(12, 3, false, 4, ProblemKind::CVC);
    ApproxOptions o;
    o.table_cap = 2;
    CHECK_THROWS_AS(solve_cvc_approx(s.inst.graph, s.ntd, s.inst.weight, o), ResourceError);
}

TEST_CASE("interval and witness under default and inflated epsilon") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto k = static_cast<std::int32_t>(1 + seed % 3);
        auto s = sample(static_cast<Vertex>(k + 2 + seed % 10), k, seed % 2 == 1, seed, ProblemKind::CVC);
        const Graph& g = s.inst.graph;
        auto opt = cvc_opt_brute(g, s.inst.weight);
        for (bool inflate : {false, true}) {
            ApproxOptions o;
            if (inflate) o.epsilon = inflated_eps(s.ntd.root_height());
            auto sol = solve_cvc_approx(g, s.ntd, s.inst.weight, o);
            REQUIRE(sol.feasible == opt.has_value());
            if (!opt) continue;
            Rational f = sol.schedule.delta_root() + 1;
            CHECK(sol.k_hat_min >= *opt);
            CHECK(sol.k_hat_min <= f * f * *opt);
            CHECK(sol.opt_lower <= *opt);
            CHECK(orientation_feasible(g, sol.orientation, s.inst.weight, all_vertices(g)));
            CHECK(Rational(static_cast<long>(sol.cover.size())) <= f * f * *opt);
        }
    }
}

TEST_CASE("exact and rounded tables are close at every node") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto k = static_cast<std::int32_t>(1 + seed % 3);
        auto s = sample(static_cast<Vertex>(k + 2 + seed % 8), k, seed % 2 == 0, seed, ProblemKind::CVC);
        const Graph& g = s.inst.graph;
        auto exact = exact_tables(g, s.ntd, s.inst.weight);
        for (bool inflate : {false, true}) {
            auto sched = make_schedule(s.ntd.width(), g.n(), s.ntd.root_height(),
                                       inflate ? std::optional<Rational>(inflated_eps(s.ntd.root_height()))
                                               : std::nullopt);
            ApproxDp dp(g, s.ntd, s.inst.weight, sched);
            dp.run();
            for (NodeId a = 0; a < s.ntd.size(); ++a) {
                auto h = s.ntd.node(a).height;
                auto r = closeness_check(exact[static_cast<std::size_t>(a)], dp.table(a), dp.arith(), sched.eps_h(h),
                                         sched.delta_h(h));
                CHECK(r.a_holds);
                CHECK(r.b_holds);
            }
        }
    }
}

TEST_CASE("counterparts realize close exact records") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto s = sample(static_cast<Vertex>(6 + seed % 5), 2, seed % 2 == 0, seed, ProblemKind::CVC);
        const Graph& g = s.inst.graph;
        auto sched = make_schedule(s.ntd.width(), g.n(), s.ntd.root_height(), inflated_eps(s.ntd.root_height()));
        ApproxDp dp(g, s.ntd, s.inst.weight, sched);
        dp.run();
        for (NodeId a = 0; a < s.ntd.size(); ++a) {
            const auto& t = dp.table(a);
            for (std::int32_t i = 0; i < static_cast<std::int32_t>(t.size()); ++i) {
                auto cp = dp.counterpart(a, i);
                CHECK(bag_outdegrees(g, s.ntd, a, cp.orientation) == cp.d);
                CHECK(orientation_feasible(g, cp.orientation, s.inst.weight, s.ntd.y_set(a)));
                std::int32_t covering = 0;
                auto in = indegrees(g, cp.orientation);
                for (Vertex y : s.ntd.y_set(a)) covering += in[static_cast<std::size_t>(y)] > 0;
                CHECK(covering <= cp.k);
                CHECK(cp.k <= s.ntd.y_size(a));
                auto h = s.ntd.node(a).height;
                Rational f = sched.delta_h(h) + 1;
                CHECK(Rational(cp.k) <= f * t.entry(i).k);
                CHECK(Rational(t.entry(i).k) <= f * cp.k);
                for (std::size_t p = 0; p < cp.d.size(); ++p)
                    CHECK(dp.arith().close(cp.d[p], RoundedValue::from_code(t.entry(i).key[p]), sched.eps_h(h)));
            }
        }
    }
}

} // TEST_SUITE
