#include "twapprox/rounding.hpp"

#include "twapprox/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace twapprox {

namespace {

class Mp {
public:
    explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mp() { mpfr_clear(v_); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

constexpr mpfr_prec_t kStartPrecision = 128;
constexpr mpfr_prec_t kMaxPrecision = 1 << 14;

int sign(int c) { return (c > 0) - (c < 0); }

mpz_class ipow(const mpz_class& base, std::int64_t e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

} // namespace

Rational parse_rational(const std::string& text) {
    auto bad = [&] { return InputError("cannot parse rational '" + text + "'"); };
    if (text.empty()) throw bad();
    Rational q;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        mpz_class p, d;
        if (p.set_str(text.substr(0, slash), 10) != 0 || d.set_str(text.substr(slash + 1), 10) != 0) throw bad();
        if (d == 0) throw bad();
        q = Rational(p, d);
    } else if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (negative) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        if (frac.empty() || !std::all_of(frac.begin(), frac.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw bad();
        mpz_class w, f;
        if (w.set_str(whole, 10) != 0 || f.set_str(frac, 10) != 0) throw bad();
        mpz_class scale = ipow(10, static_cast<std::int64_t>(frac.size()));
        q = Rational(w * scale + f, scale);
        if (negative) q = -q;
    } else {
        mpz_class p;
        if (p.set_str(text, 10) != 0) throw bad();
        q = Rational(p);
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::int64_t ceil_to_int(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r.get_si();
}

std::int64_t floor_to_int(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r.get_si();
}

EpsilonArithmetic::EpsilonArithmetic(Rational eps) : eps_(std::move(eps)) {
    eps_.canonicalize();
    if (eps_ <= 0) throw ConfigError("epsilon must be positive");
    Rational base = eps_ + 1;
    base.canonicalize();
    num_ = base.get_num();
    den_ = base.get_den();
}

int EpsilonArithmetic::compare_power(std::int64_t x, const Rational& r) {
    if (r <= 0) return 1;
    if (x == 0) return sign(cmp(Rational(1), r));
    auto key = std::make_pair(x, r);
    if (auto it = compare_memo_.find(key); it != compare_memo_.end()) return it->second;

    int result = 0;
    bool decided = false;
    for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision && !decided; prec *= 2) {
        Mp e_lo(prec), e_hi(prec), l_lo(prec), l_hi(prec), t_lo(prec), t_hi(prec), g_lo(prec), g_hi(prec);
        mpfr_set_q(e_lo.get(), eps_.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(e_hi.get(), eps_.get_mpq_t(), MPFR_RNDU);
        mpfr_log1p(l_lo.get(), e_lo.get(), MPFR_RNDD);
        mpfr_log1p(l_hi.get(), e_hi.get(), MPFR_RNDU);
        if (x > 0) {
            mpfr_mul_si(t_lo.get(), l_lo.get(), static_cast<long>(x), MPFR_RNDD);
            mpfr_mul_si(t_hi.get(), l_hi.get(), static_cast<long>(x), MPFR_RNDU);
        } else {
            mpfr_mul_si(t_lo.get(), l_hi.get(), static_cast<long>(x), MPFR_RNDD);
            mpfr_mul_si(t_hi.get(), l_lo.get(), static_cast<long>(x), MPFR_RNDU);
        }
        mpfr_set_q(g_lo.get(), r.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(g_hi.get(), r.get_mpq_t(), MPFR_RNDU);
        mpfr_log(g_lo.get(), g_lo.get(), MPFR_RNDD);
        mpfr_log(g_hi.get(), g_hi.get(), MPFR_RNDU);
        if (mpfr_less_p(t_hi.get(), g_lo.get())) {
            result = -1;
            decided = true;
        } else if (mpfr_greater_p(t_lo.get(), g_hi.get())) {
            result = 1;
            decided = true;
        }
    }
    if (!decided) {
        // Only reachable when (1+eps)^x is (nearly) equal to r.
        const mpz_class& p = r.get_num();
        const mpz_class& q = r.get_den();
        if (x > 0) result = sign(cmp(ipow(num_, x) * q, p * ipow(den_, x)));
        else result = sign(cmp(ipow(den_, -x) * q, p * ipow(num_, -x)));
    }
    compare_memo_.emplace(std::move(key), result);
    return result;
}

// Largest y >= 0 with (1+eps)^y <= 1 + (1+eps)^(-gap).
std::int64_t EpsilonArithmetic::sum_offset(std::int64_t gap) {
    if (auto it = offset_memo_.find(gap); it != offset_memo_.end()) return it->second;
    std::int64_t lo = 0, hi = -1;
    for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        Mp e_lo(prec), e_hi(prec), l_lo(prec), l_hi(prec), t_lo(prec), t_hi(prec), x_lo(prec), x_hi(prec),
            q_lo(prec), q_hi(prec);
        mpfr_set_q(e_lo.get(), eps_.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(e_hi.get(), eps_.get_mpq_t(), MPFR_RNDU);
        mpfr_log1p(l_lo.get(), e_lo.get(), MPFR_RNDD);
        mpfr_log1p(l_hi.get(), e_hi.get(), MPFR_RNDU);
        mpfr_mul_si(t_lo.get(), l_lo.get(), static_cast<long>(gap), MPFR_RNDD);
        mpfr_mul_si(t_hi.get(), l_hi.get(), static_cast<long>(gap), MPFR_RNDU);
        mpfr_neg(t_lo.get(), t_lo.get(), MPFR_RNDN);  // exact
        mpfr_neg(t_hi.get(), t_hi.get(), MPFR_RNDN);
        mpfr_exp(x_lo.get(), t_hi.get(), MPFR_RNDD);
        mpfr_exp(x_hi.get(), t_lo.get(), MPFR_RNDU);
        mpfr_log1p(x_lo.get(), x_lo.get(), MPFR_RNDD);
        mpfr_log1p(x_hi.get(), x_hi.get(), MPFR_RNDU);
        mpfr_div(q_lo.get(), x_lo.get(), l_hi.get(), MPFR_RNDD);
        mpfr_div(q_hi.get(), x_hi.get(), l_lo.get(), MPFR_RNDU);
        lo = mpfr_get_si(q_lo.get(), MPFR_RNDD);
        hi = mpfr_get_si(q_hi.get(), MPFR_RNDD);
        if (lo == hi) break;
    }
    std::int64_t y = std::max<std::int64_t>(lo, 0);
    if (lo != hi) {
        // P^(y+gap) <= Q^y * (P^gap + Q^gap) with 1+eps = P/Q.
        auto fits = [&](std::int64_t cand) {
            return ipow(num_, cand + gap) <= ipow(den_, cand) * (ipow(num_, gap) + ipow(den_, gap));
        };
        for (std::int64_t cand = hi; cand >= lo; --cand)
            if (cand >= 0 && fits(cand)) {
                y = cand;
                break;
            }
    }
    offset_memo_.emplace(gap, y);
    return y;
}

RoundedValue EpsilonArithmetic::round_down(const Rational& a) {
    if (a < 1) return RoundedValue::zero();
    long double guess = std::log(a.get_d()) / std::log1p(eps_.get_d());
    auto x = static_cast<std::int64_t>(std::floor(guess));
    x = std::max<std::int64_t>(x, 0);
    while (x > 0 && compare_power(x, a) > 0) --x;
    while (compare_power(x + 1, a) <= 0) ++x;
    return RoundedValue::power(static_cast<std::int32_t>(x));
}

RoundedValue EpsilonArithmetic::add(RoundedValue a, RoundedValue b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a < b) std::swap(a, b);
    std::int64_t x = a.exponent() + sum_offset(a.exponent() - b.exponent());
    return RoundedValue::power(static_cast<std::int32_t>(x));
}

int EpsilonArithmetic::compare(RoundedValue a, const Rational& r) {
    if (a.is_zero()) return sign(cmp(Rational(0), r));
    return compare_power(a.exponent(), r);
}

std::int64_t EpsilonArithmetic::ceil_div(RoundedValue a, const Rational& divisor) {
    if (divisor <= 0) throw InternalError("ceil_div by a non-positive divisor");
    if (a.is_zero()) return 0;
    long double guess = std::exp(a.exponent() * std::log1p(static_cast<long double>(eps_.get_d()))) /
                        static_cast<long double>(divisor.get_d());
    auto c = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(guess)));
    // Smallest c with value <= c * divisor.
    while (compare_power(a.exponent(), Rational(c) * divisor) > 0) ++c;
    while (c > 1 && compare_power(a.exponent(), Rational(c - 1) * divisor) <= 0) --c;
    return c;
}

bool EpsilonArithmetic::close(const Rational& d, RoundedValue a, const Rational& gamma) {
    if (a.is_zero()) return d == 0;
    if (d <= 0) return false;
    Rational up = d * (gamma + 1);
    Rational down = d / (gamma + 1);
    return compare(a, up) <= 0 && compare(a, down) >= 0;
}

double EpsilonArithmetic::approx(RoundedValue a) const {
    if (a.is_zero()) return 0.0;
    return std::exp(a.exponent() * std::log1p(eps_.get_d()));
}

std::int32_t ceil_log2(std::int64_t n) {
    std::int32_t c = 0;
    while ((std::int64_t{1} << c) < n) ++c;
    return c;
}

Rational default_epsilon(std::int32_t w, std::int64_t n, std::int32_t h0) {
    std::int64_t wc = std::max<std::int32_t>(w, 1);
    std::int64_t nc = std::max<std::int64_t>(n, 2);
    std::int64_t depth = std::max<std::int64_t>({wc * wc * ceil_log2(nc), h0, 8});
    mpz_class d = depth;
    return Rational(mpz_class(1), d * d * d);
}

ErrorSchedule make_schedule(std::int32_t w, std::int64_t n, std::int32_t h0, std::optional<Rational> eps_override) {
    ErrorSchedule s;
    s.width = std::max<std::int32_t>(w, 1);
    s.n = std::max<std::int64_t>(n, 2);
    s.root_height = h0;
    s.overridden = eps_override.has_value();
    s.eps = eps_override ? *eps_override : default_epsilon(w, n, h0);
    s.eps.canonicalize();
    if (s.eps <= 0) throw ConfigError("epsilon must be positive");
    if (s.delta_root() >= 1)
        throw ConfigError("epsilon " + to_string(s.eps) + " gives delta_h0 = " + to_string(s.delta_root()) +
                          " >= 1 at root height " + std::to_string(h0));
    return s;
}

} // namespace twapprox
