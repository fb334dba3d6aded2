#include "twapprox/errors.hpp"
#include "twapprox/generator.hpp"
#include "twapprox/rounding.hpp"

#include <doctest.h>

using namespace twapprox;

namespace {

// Random r with 1/(1+g) <= r <= 1+g.
Rational perturbation(Rng& rng, const Rational& g) {
    Rational u(rng.uniform(0, 1000), 1000);
    Rational up = Rational(1) + g * u;
    up.canonicalize();
    if (rng.chance(1, 2)) return up;
    Rational down = Rational(1) / up;
    down.canonicalize();
    return down;
}

} // namespace

TEST_SUITE("rounding") {

TEST_CASE("rational parsing") {
    CHECK(parse_rational("1/64000") == Rational(1, 64000));
    CHECK(parse_rational("0.05") == Rational(1, 20));
    CHECK(parse_rational("3") == Rational(3));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK(ceil_to_int(Rational(7, 2)) == 4);
    CHECK(floor_to_int(Rational(7, 2)) == 3);
}

TEST_CASE("round down") {
    EpsilonArithmetic half(Rational(1, 2));
    CHECK(half.round_down(0).is_zero());
    CHECK(half.round_down(1) == RoundedValue::power(0));
    CHECK(half.round_down(5) == RoundedValue::power(3));
    CHECK(half.round_down(Rational(27, 8)) == RoundedValue::power(3));
    CHECK(half.round_down(Rational(1, 2)).is_zero());
}

TEST_CASE("rounded addition") {
    EpsilonArithmetic half(Rational(1, 2));
    auto z = RoundedValue::zero();
    CHECK(half.add(z, z).is_zero());
    CHECK(half.add(z, RoundedValue::power(4)) == RoundedValue::power(4));
    CHECK(half.add(RoundedValue::power(0), RoundedValue::power(0)) == RoundedValue::power(1));
}

TEST_CASE("addition matches rounding the exact sum") {
    for (auto eps : {Rational(1, 2), Rational(1, 10), Rational(1, 97), Rational(3, 1000)}) {
        EpsilonArithmetic ar(eps);
        Rng rng(eps.get_den().get_ui());
        Rational base = Rational(1) + eps;
        for (int t = 0; t < 150; ++t) {
            auto x = static_cast<std::int32_t>(rng.uniform(-1, 60));
            auto y = static_cast<std::int32_t>(rng.uniform(-1, 60));
            auto value = [&](std::int32_t c) {
                Rational v = 0;
                if (c >= 0) {
                    v = 1;
                    for (int i = 0; i < c; ++i) v *= base;
                }
                return v;
            };
            Rational sum = value(x) + value(y);
            CHECK(ar.add(RoundedValue::from_code(x), RoundedValue::from_code(y)) == ar.round_down(sum));
            auto r = ar.round_down(sum);
            CHECK(ar.compare(r, sum) <= 0);
            CHECK(ar.compare(RoundedValue::power(r.is_zero() ? 0 : r.exponent() + 1), sum) > 0);
        }
    }
}

TEST_CASE("ceil division and closeness") {
    EpsilonArithmetic half(Rational(1, 2));
    // 1.5^3 = 3.375
    CHECK(half.ceil_div(RoundedValue::power(3), 1) == 4);
    CHECK(half.ceil_div(RoundedValue::power(3), Rational(27, 8)) == 1);
    CHECK(half.ceil_div(RoundedValue::zero(), 2) == 0);
    CHECK(half.close(3, RoundedValue::power(3), Rational(1, 8)));
    CHECK_FALSE(half.close(2, RoundedValue::power(3), Rational(1, 2)));
    CHECK(half.close(0, RoundedValue::zero(), 0));
    CHECK_FALSE(half.close(1, RoundedValue::zero(), 1));
}

TEST_CASE("rounding stays within the base tolerance") {
    EpsilonArithmetic ar(Rational(1, 50));
    for (int a = 1; a <= 300; ++a) CHECK(ar.close(a, ar.round_down(a), Rational(1, 50)));
}

TEST_CASE("error schedule") {
    auto s = make_schedule(2, 1024, 30);
    CHECK(s.eps == Rational(1, 64000));
    CHECK(s.eps_h(0) == 0);
    CHECK(s.delta_h(1) == 8 * s.eps);
    CHECK(s.delta_h(0) == 0);
    for (int h = 1; h < 40; ++h) {
        CHECK(s.eps_h(h) >= s.eps_h(h - 1));
        CHECK(s.delta_h(h) >= s.delta_h(h - 1));
    }
    CHECK(s.delta_root() < 1);
    CHECK_THROWS_AS(make_schedule(2, 1024, 30, Rational(1, 10)), ConfigError);
    CHECK_THROWS_AS(make_schedule(2, 1024, 30, Rational(0)), ConfigError);
    CHECK(make_schedule(2, 1024, 30, Rational(1, 10000)).overridden);
}

TEST_CASE("default epsilon keeps the root tolerance below one") {
    for (std::int32_t w = 1; w <= 6; ++w)
        for (std::int64_t n : {2, 10, 100, 5000})
            for (std::int32_t h0 : {0, 5, 50, 400}) CHECK(make_schedule(w, n, h0).delta_root() < 1);
}

TEST_CASE("rounding error composes across one level") {
    Rng rng(2024);
    for (int t = 0; t < 2000; ++t) {
        Rational eps(1, rng.uniform(3, 400));
        EpsilonArithmetic ar(eps);
        std::int32_t hmax = static_cast<std::int32_t>(floor_to_int(Rational(1) / (2 * eps)));
        auto h = static_cast<std::int32_t>(rng.uniform(1, std::max(1, hmax)));
        Rational eh = Rational(2 * h) * eps;
        // Exact values are integers; perturbed ones never drop below 1 unless 0.
        Rational a(rng.uniform(0, 5000)), b(rng.uniform(0, 5000));
        auto perturb = [&](const Rational& x) {
            if (x == 0) return x;
            Rational y = x * perturbation(rng, eh);
            return y < 1 ? Rational(1) : y;
        };
        Rational a2 = perturb(a), b2 = perturb(b);
        auto r = ar.round_down(a2 + b2);
        CHECK(ar.close(a + b, r, Rational(2 * (h + 1)) * eps));
    }
}

} // TEST_SUITE
