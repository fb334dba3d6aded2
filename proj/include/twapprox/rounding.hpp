#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace twapprox {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal such as "0.05". Throws InputError.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::int64_t ceil_to_int(const Rational& q);
std::int64_t floor_to_int(const Rational& q);

/// A member of N_eps = {0} ∪ {(1+eps)^x : x ∈ ℕ}, stored as an exponent.
class RoundedValue {
public:
    constexpr RoundedValue() = default;
    static constexpr RoundedValue zero() { return RoundedValue(); }
    static constexpr RoundedValue power(std::int32_t x) { return RoundedValue(x); }
    /// Inverse of code(): -1 is zero, x >= 0 is (1+eps)^x.
    static constexpr RoundedValue from_code(std::int32_t c) { return c < 0 ? zero() : power(c); }

    constexpr bool is_zero() const { return code_ < 0; }
    constexpr std::int32_t exponent() const { return code_; }
    constexpr std::int32_t code() const { return code_; }

    friend constexpr bool operator==(RoundedValue, RoundedValue) = default;
    /// Orders by numeric value.
    friend constexpr auto operator<=>(RoundedValue a, RoundedValue b) { return a.code_ <=> b.code_; }

private:
    constexpr explicit RoundedValue(std::int32_t x) : code_(x) {}
    std::int32_t code_ = -1;
};

/// Exact arithmetic and comparisons on N_eps for one rational eps > 0.
///
/// Values (1+eps)^x are never expanded: comparisons against rationals are
/// decided on MPFR intervals of x*log(1+eps), raising the precision until the
/// interval separates, with a big-integer comparison as the last resort. The
/// answers are therefore exact. Results are memoized; an instance is not
/// thread-safe.
class EpsilonArithmetic {
public:
    explicit EpsilonArithmetic(Rational eps);

    const Rational& eps() const { return eps_; }

    /// [a]_eps: the largest member of N_eps that is <= a (a >= 0).
    RoundedValue round_down(const Rational& a);
    /// [value(a) + value(b)]_eps.
    RoundedValue add(RoundedValue a, RoundedValue b);
    /// [value(a) + 1]_eps.
    RoundedValue add_one(RoundedValue a) { return add(a, RoundedValue::power(0)); }

    /// Sign of value(a) - r.
    int compare(RoundedValue a, const Rational& r);
    /// ceil(value(a) / divisor) for divisor > 0.
    std::int64_t ceil_div(RoundedValue a, const Rational& divisor);
    /// d ~_gamma value(a), i.e. value(a)/(1+gamma) <= d <= (1+gamma)*value(a).
    bool close(const Rational& d, RoundedValue a, const Rational& gamma);

    /// Floating approximation for reports only.
    double approx(RoundedValue a) const;

private:
    int compare_power(std::int64_t x, const Rational& r);
    std::int64_t sum_offset(std::int64_t gap);

    Rational eps_;
    mpz_class num_, den_;  // 1 + eps = num_/den_ in lowest terms
    std::map<std::int64_t, std::int64_t> offset_memo_;
    std::map<std::pair<std::int64_t, Rational>, int> compare_memo_;
};

/// Per-height error bounds: eps_h = 2*h*eps and delta_h = 4*(h+1)*h*eps.
struct ErrorSchedule {
    Rational eps;
    std::int32_t width = 1;
    std::int64_t n = 2;
    std::int32_t root_height = 0;
    bool overridden = false;

    Rational eps_h(std::int32_t h) const { return Rational(2 * static_cast<long>(h)) * eps; }
    Rational delta_h(std::int32_t h) const {
        return Rational(4 * (static_cast<long>(h) + 1) * static_cast<long>(h)) * eps;
    }
    Rational delta_root() const { return delta_h(root_height); }
};

std::int32_t ceil_log2(std::int64_t n);

/// Default eps = 1/D^3 with D = max(w^2 * ceil(log2 n), h0, 8). Substituting
/// the measured root height for the balanced-depth bound keeps delta_{h0} < 1.
Rational default_epsilon(std::int32_t w, std::int64_t n, std::int32_t h0);

/// Builds the schedule; w and n are clamped to at least 1 and 2. Throws
/// ConfigError when eps <= 0 or delta_{h0} >= 1.
ErrorSchedule make_schedule(std::int32_t w, std::int64_t n, std::int32_t h0,
                            std::optional<Rational> eps_override = std::nullopt);

} // namespace twapprox
