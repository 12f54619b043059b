#include "mp/arith.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>

#include "mp/detail/cores.hpp"
#include "mp/detail/kernel.hpp"
#include "mp/error.hpp"

namespace mp {

using detail::Dir;

std::int64_t gcd_small(std::int64_t a, std::int64_t b) {
    a = std::abs(a);
    b = std::abs(b);
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw ZeroDenominator("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = gcd_small(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

namespace detail {

std::int64_t digit_count(std::int64_t base, std::int64_t v) {
    v = std::abs(v);
    std::int64_t n = 0;
    while (v > 0) {
        v /= base;
        ++n;
    }
    return n;
}

MpFloat pad_digits(const MpFloat& x, std::int64_t t) {
    MpFloat r = x;
    if (static_cast<std::int64_t>(r.digit.size()) < t)
        r.digit.resize(static_cast<std::size_t>(t), 0);
    return r;
}

MpFloat int_exact(const Context& ctx, std::int64_t v) {
    if (v == 0) return mp_zero();
    MpFloat r;
    r.sign = v > 0 ? +1 : -1;
    std::int64_t a = std::abs(v);
    std::vector<std::int64_t> rev;
    while (a > 0) {
        rev.push_back(a % ctx.base);
        a /= ctx.base;
    }
    r.exponent = static_cast<std::int64_t>(rev.size());
    r.digit.assign(rev.rbegin(), rev.rend());
    return r;
}

namespace {

// Exact unnormalized construction shared by the exact helpers: propagate
// carries, strip leading zeros, never round, never apply range policies.
MpFloat settle_exact(const Context& ctx, RawMp u) {
    if (u.sign == 0) return mp_zero();
    carry_fix(u, ctx.base);
    std::size_t lead = 0;
    while (lead < u.dig.size() && u.dig[lead] == 0) ++lead;
    if (lead == u.dig.size()) return mp_zero();
    u.dig.erase(u.dig.begin(), u.dig.begin() + static_cast<std::ptrdiff_t>(lead));
    u.exp -= static_cast<std::int64_t>(lead);
    while (!u.dig.empty() && u.dig.back() == 0) u.dig.pop_back();
    MpFloat r;
    r.sign = u.sign;
    r.exponent = u.exp;
    r.digit = std::move(u.dig);
    return r;
}

} // namespace

MpFloat add_round(const Context& ctx, const MpFloat& x, const MpFloat& y, std::int64_t t_out,
                  Dir dir) {
    if (x.is_zero()) return normalize_round(ctx, raw_from(y), t_out, dir);
    if (y.is_zero()) return normalize_round(ctx, raw_from(x), t_out, dir);
    const int cm = compare_mag(x, y);
    const bool same = x.sign == y.sign;
    if (!same && cm == 0) return mp_zero();
    const MpFloat& big = cm >= 0 ? x : y;
    const MpFloat& small = cm >= 0 ? y : x;
    const std::int64_t lb = static_cast<std::int64_t>(big.digit.size());
    const std::int64_t ls = static_cast<std::int64_t>(small.digit.size());
    const std::int64_t d = big.exponent - small.exponent;
    const std::int64_t thresh = std::max(lb, t_out) + 4;

    RawMp u;
    u.sign = big.sign;
    u.exp = big.exponent;
    if (d <= thresh) {
        const std::int64_t len = std::max(lb, d + ls);
        u.dig.assign(static_cast<std::size_t>(len), 0);
        for (std::int64_t i = 0; i < lb; ++i) u.dig[static_cast<std::size_t>(i)] = big.digit[i];
        for (std::int64_t i = 0; i < ls; ++i) {
            auto& slot = u.dig[static_cast<std::size_t>(d + i)];
            slot += same ? small.digit[i] : -small.digit[i];
        }
    } else {
        // The small operand lies entirely below the guard window; it only
        // contributes a tail strictly less than 1/B of the last held unit.
        u.dig.assign(static_cast<std::size_t>(thresh), 0);
        for (std::int64_t i = 0; i < lb; ++i) u.dig[static_cast<std::size_t>(i)] = big.digit[i];
        u.tail.sign = same ? +1 : -1;
        u.tail.half = -1;
    }
    return normalize_round(ctx, std::move(u), t_out, dir);
}

MpFloat add_exact(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const int cm = compare_mag(x, y);
    const bool same = x.sign == y.sign;
    if (!same && cm == 0) return mp_zero();
    const MpFloat& big = cm >= 0 ? x : y;
    const MpFloat& small = cm >= 0 ? y : x;
    const std::int64_t d = big.exponent - small.exponent;
    const std::int64_t lb = static_cast<std::int64_t>(big.digit.size());
    const std::int64_t ls = static_cast<std::int64_t>(small.digit.size());
    if (d > (1LL << 22))
        throw RangeError("add_exact: operand scales too far apart");
    RawMp u;
    u.sign = big.sign;
    u.exp = big.exponent;
    const std::int64_t len = std::max(lb, d + ls);
    u.dig.assign(static_cast<std::size_t>(len), 0);
    for (std::int64_t i = 0; i < lb; ++i) u.dig[static_cast<std::size_t>(i)] = big.digit[i];
    for (std::int64_t i = 0; i < ls; ++i) {
        auto& slot = u.dig[static_cast<std::size_t>(d + i)];
        slot += same ? small.digit[i] : -small.digit[i];
    }
    return settle_exact(ctx, std::move(u));
}

MpFloat mul_round(const Context& ctx, const MpFloat& x, const MpFloat& y, std::int64_t t_out,
                  Dir dir) {
    if (x.is_zero() || y.is_zero()) return mp_zero();
    const std::int64_t base = ctx.base;
    const std::size_t lx = x.digit.size(), ly = y.digit.size();
    RawMp u;
    u.sign = x.sign * y.sign;
    u.exp = x.exponent + y.exponent;
    u.dig.assign(lx + ly, 0);

    // Deferred-carry inner loop: each slot may accumulate `stride` digit
    // products before a flush, bounded by the 8*B^2-1 word guarantee.
    std::int64_t stride = ctx.max_int / (base * base);
    if (stride < 8) stride = 8;
    if (stride > 4096) stride = 4096;

    std::int64_t rows = 0;
    for (std::size_t i = 0; i < lx; ++i) {
        const std::int64_t xd = x.digit[i];
        if (xd == 0) continue; // zero digits of x are skipped
        for (std::size_t j = 0; j < ly; ++j)
            u.dig[i + j + 1] += xd * y.digit[j];
        if (++rows == stride) {
            std::int64_t carry = 0;
            for (std::size_t k = u.dig.size(); k-- > 0;) {
                std::int64_t v = u.dig[k] + carry;
                carry = v / base;
                u.dig[k] = v - carry * base;
            }
            assert(carry == 0);
            rows = 0;
        }
    }
    return normalize_round(ctx, std::move(u), t_out, dir);
}

namespace {

// Raw product digits of x and |m|, exact, no rounding. Returns digits
// aligned so that weight of dig[0] is B^(exp-1).
RawMp muli_raw(const Context& ctx, const MpFloat& x, std::int64_t m) {
    const std::int64_t base = ctx.base;
    const std::int64_t a = std::abs(m);
    RawMp u;
    u.sign = (m > 0 ? x.sign : -x.sign);
    u.exp = x.exponent;
    u.dig.assign(x.digit.size(), 0);
    unsigned __int128 carry = 0;
    for (std::size_t i = x.digit.size(); i-- > 0;) {
        unsigned __int128 v =
            static_cast<unsigned __int128>(x.digit[i]) * static_cast<unsigned __int128>(a) + carry;
        u.dig[i] = static_cast<std::int64_t>(v % static_cast<unsigned __int128>(base));
        carry = v / static_cast<unsigned __int128>(base);
    }
    while (carry > 0) {
        u.dig.insert(u.dig.begin(), static_cast<std::int64_t>(carry % static_cast<unsigned __int128>(base)));
        carry /= static_cast<unsigned __int128>(base);
        u.exp += 1;
    }
    return u;
}

} // namespace

MpFloat muli_round(const Context& ctx, const MpFloat& x, std::int64_t m, std::int64_t t_out,
                   Dir dir) {
    if (x.is_zero() || m == 0) return mp_zero();
    return normalize_round(ctx, muli_raw(ctx, x, m), t_out, dir);
}

MpFloat muli_exact(const Context& ctx, const MpFloat& x, std::int64_t m) {
    if (x.is_zero() || m == 0) return mp_zero();
    RawMp u = muli_raw(ctx, x, m);
    std::size_t lead = 0;
    while (lead < u.dig.size() && u.dig[lead] == 0) ++lead;
    u.dig.erase(u.dig.begin(), u.dig.begin() + static_cast<std::ptrdiff_t>(lead));
    u.exp -= static_cast<std::int64_t>(lead);
    MpFloat r;
    r.sign = u.sign;
    r.exponent = u.exp;
    r.digit = std::move(u.dig);
    return r;
}

MpFloat divi_round(const Context& ctx, const MpFloat& x, std::int64_t d, std::int64_t t_out,
                   Dir dir) {
    if (d == 0) throw DivisionByZero("division by zero integer");
    if (x.is_zero()) return mp_zero();
    const std::int64_t base = ctx.base;
    const unsigned __int128 a = static_cast<unsigned __int128>(std::abs(d));
    const std::int64_t lx = static_cast<std::int64_t>(x.digit.size());

    RawMp u;
    u.sign = (d > 0 ? x.sign : -x.sign);
    u.exp = x.exponent;

    unsigned __int128 rem = 0;
    std::int64_t lead = -1; // index of first nonzero quotient digit
    std::int64_t i = 0;
    const std::int64_t hard_cap = lx + t_out + digit_count(base, std::abs(d)) + 8;
    while (true) {
        unsigned __int128 cur =
            rem * static_cast<unsigned __int128>(base) +
            static_cast<unsigned __int128>(i < lx ? x.digit[static_cast<std::size_t>(i)] : 0);
        std::int64_t q = static_cast<std::int64_t>(cur / a);
        rem = cur % a;
        u.dig.push_back(q);
        if (lead < 0 && q != 0) lead = i;
        ++i;
        // Every dividend digit must be consumed so the remainder is exact.
        if (lead >= 0 && i >= lead + t_out + 2 && i >= lx) break;
        if (i > hard_cap && i >= lx) break;
    }
    assert(lead >= 0);
    if (rem > 0) {
        u.tail.sign = +1;
        unsigned __int128 twice = rem * 2;
        u.tail.half = twice > a ? +1 : (twice == a ? 0 : -1);
    }
    return normalize_round(ctx, std::move(u), t_out, dir);
}

void vec_trim(Vec& v) {
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lead));
}

bool vec_is_zero(const Vec& v) {
    for (auto d : v)
        if (d != 0) return false;
    return true;
}

int vec_compare(const Vec& a, const Vec& b) {
    std::size_t la = a.size(), lb = b.size();
    std::size_t sa = 0, sb = 0;
    while (sa < la && a[sa] == 0) ++sa;
    while (sb < lb && b[sb] == 0) ++sb;
    const std::size_t na = la - sa, nb = lb - sb;
    if (na != nb) return na > nb ? +1 : -1;
    for (std::size_t i = 0; i < na; ++i)
        if (a[sa + i] != b[sb + i]) return a[sa + i] > b[sb + i] ? +1 : -1;
    return 0;
}

void vec_mul_scalar(Vec& v, std::int64_t m, std::int64_t base) {
    if (m == 1) return;
    if (m == 0) {
        v.clear();
        return;
    }
    unsigned __int128 carry = 0;
    for (std::size_t i = v.size(); i-- > 0;) {
        unsigned __int128 t =
            static_cast<unsigned __int128>(v[i]) * static_cast<unsigned __int128>(m) + carry;
        carry = t / static_cast<unsigned __int128>(base);
        v[i] = static_cast<std::int64_t>(t - carry * static_cast<unsigned __int128>(base));
    }
    while (carry > 0) {
        v.insert(v.begin(), static_cast<std::int64_t>(carry % static_cast<unsigned __int128>(base)));
        carry /= static_cast<unsigned __int128>(base);
    }
}

void vec_mul_pow(Vec& v, std::int64_t b, std::int64_t e, std::int64_t base) {
    std::int64_t chunk = 1, g = 0;
    while (chunk <= (std::int64_t{1} << 40) / b) {
        chunk *= b;
        ++g;
    }
    while (e > 0) {
        if (e >= g) {
            vec_mul_scalar(v, chunk, base);
            e -= g;
        } else {
            std::int64_t p = 1;
            for (std::int64_t i = 0; i < e; ++i) p *= b;
            vec_mul_scalar(v, p, base);
            e = 0;
        }
    }
}

std::int64_t vec_divmod_scalar(Vec& v, std::int64_t d, std::int64_t base) {
    unsigned __int128 rem = 0;
    const unsigned __int128 dd = static_cast<unsigned __int128>(d);
    for (auto& dgt : v) {
        unsigned __int128 cur =
            rem * static_cast<unsigned __int128>(base) + static_cast<unsigned __int128>(dgt);
        dgt = static_cast<std::int64_t>(cur / dd);
        rem = cur % dd;
    }
    vec_trim(v);
    return static_cast<std::int64_t>(rem);
}

std::pair<Vec, Vec> vec_divmod(Vec u, Vec v, std::int64_t base) {
    vec_trim(u);
    vec_trim(v);
    assert(!v.empty() && "division by zero vector");
    if (vec_compare(u, v) < 0) return {Vec{}, std::move(u)};
    if (v.size() == 1) {
        std::int64_t r = vec_divmod_scalar(u, v[0], base);
        Vec rem;
        if (r != 0) rem.push_back(r);
        return {std::move(u), std::move(rem)};
    }

    // Knuth algorithm D with the usual normalization so the divisor's
    // leading digit is at least B/2 (keeps the 2-digit estimate within 2).
    const std::int64_t m = base / (v[0] + 1);
    if (m > 1) {
        vec_mul_scalar(u, m, base);
        vec_mul_scalar(v, m, base);
    }
    const std::int64_t n = static_cast<std::int64_t>(v.size());
    u.insert(u.begin(), 0);
    const std::int64_t y0 = v[0];
    const std::int64_t y1 = v[1];
    const std::int64_t steps = static_cast<std::int64_t>(u.size()) - n;

    Vec q;
    q.reserve(static_cast<std::size_t>(steps));
    for (std::int64_t j = 0; j < steps; ++j) {
        const std::size_t bi = static_cast<std::size_t>(j);
        std::int64_t qhat;
        if (u[bi] >= y0) {
            qhat = base - 1;
        } else {
            std::int64_t num = u[bi] * base + u[bi + 1];
            qhat = num / y0;
            std::int64_t rhat = num - qhat * y0;
            const std::int64_t r3 = u[bi + 2];
            while (static_cast<__int128>(qhat) * y1 >
                   (static_cast<__int128>(rhat) * base + r3)) {
                --qhat;
                rhat += y0;
                if (rhat >= base) break;
            }
        }
        if (qhat > 0) {
            std::int64_t borrow = 0;
            for (std::int64_t i = n; i >= 1; --i) {
                std::int64_t val = u[bi + static_cast<std::size_t>(i)] -
                                   qhat * v[static_cast<std::size_t>(i - 1)] - borrow;
                borrow = 0;
                if (val < 0) {
                    borrow = (-val + base - 1) / base;
                    val += borrow * base;
                }
                u[bi + static_cast<std::size_t>(i)] = val;
            }
            u[bi] -= borrow;
            while (u[bi] < 0) { // over-estimate: add the divisor back
                --qhat;
                std::int64_t carry = 0;
                for (std::int64_t i = n; i >= 1; --i) {
                    std::int64_t val = u[bi + static_cast<std::size_t>(i)] +
                                       v[static_cast<std::size_t>(i - 1)] + carry;
                    carry = val >= base ? 1 : 0;
                    if (carry) val -= base;
                    u[bi + static_cast<std::size_t>(i)] = val;
                }
                u[bi] += carry;
            }
        }
        assert(u[bi] == 0);
        q.push_back(qhat);
    }

    Vec rem(u.end() - n, u.end());
    if (m > 1) {
        std::int64_t r = vec_divmod_scalar(rem, m, base);
        assert(r == 0);
        (void)r;
    }
    vec_trim(q);
    vec_trim(rem);
    return {std::move(q), std::move(rem)};
}

MpFloat div_round(const Context& ctx, const MpFloat& x, const MpFloat& y, std::int64_t t_out,
                  Dir dir) {
    if (y.is_zero()) throw DivisionByZero("division by zero");
    if (x.is_zero()) return mp_zero();
    const std::int64_t base = ctx.base;

    // Fast path for single-digit divisors.
    if (std::all_of(y.digit.begin() + 1, y.digit.end(),
                    [](std::int64_t v) { return v == 0; })) {
        MpFloat q = divi_round(ctx, x, y.digit[0] * y.sign, t_out, dir);
        q.exponent -= y.exponent - 1;
        if (q.exponent > ctx.max_exp) return overflow_result(ctx, q.sign);
        if (!q.is_zero() && q.exponent < 1 - ctx.max_exp) return underflow_result(ctx);
        return q;
    }

    Vec yd = y.digit;
    while (yd.size() > 1 && yd.back() == 0) yd.pop_back();
    const std::int64_t n = static_cast<std::int64_t>(yd.size());

    // Dividend fx*B^k with k chosen to yield t_out + 2 significant quotient
    // digits and to hold every digit of x exactly.
    const int s = vec_compare(x.digit, yd) < 0 ? 1 : 0;
    std::int64_t k = n + t_out + 1 + s;
    const std::int64_t lx = static_cast<std::int64_t>(x.digit.size());
    if (k < lx) k = lx;

    Vec u(x.digit.begin(), x.digit.end());
    u.resize(static_cast<std::size_t>(k), 0);
    auto [q, rem] = vec_divmod(std::move(u), yd, base);

    RawMp raw;
    raw.sign = x.sign * y.sign;
    raw.exp = static_cast<std::int64_t>(q.size()) + (x.exponent - y.exponent) - (k - n);
    raw.dig = std::move(q);
    if (!rem.empty()) {
        raw.tail.sign = +1;
        Vec twice = rem;
        vec_mul_scalar(twice, 2, base);
        raw.tail.half = vec_compare(twice, yd);
    }
    return normalize_round(ctx, std::move(raw), t_out, dir);
}

} // namespace detail

// ---------------------------------------------------------------------------

namespace {

using detail::add_round;
using detail::div_round;
using detail::divi_round;
using detail::muli_round;
using detail::mul_round;

Dir rule_dir(const Context& ctx) { return detail::dir_from_rule(ctx.round_rule); }

Dir add_dir(const Context& ctx, int sx, int sy) {
    if (ctx.round_rule == Round::Truncate) return detail::add_truncate_dir(sx, sy);
    return rule_dir(ctx);
}

} // namespace

MpFloat add(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    return add_round(ctx, x, y, ctx.digits, add_dir(ctx, x.sign, y.sign));
}

MpFloat sub(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    return add_round(ctx, x, negate(y), ctx.digits, add_dir(ctx, x.sign, -y.sign));
}

MpFloat add_small(const Context& ctx, const MpFloat& x, std::int64_t i) {
    MpFloat yi = detail::int_exact(ctx, i);
    return add_round(ctx, x, yi, ctx.digits, add_dir(ctx, x.sign, yi.sign));
}

MpFloat add_rational(const Context& ctx, const MpFloat& x, const Rational& q) {
    if (q.num == 0) return x;
    const int qs = q.num > 0 ? +1 : -1;
    const Dir dir = add_dir(ctx, x.sign, qs);
    if (x.is_zero()) return detail::divi_round(ctx, detail::int_exact(ctx, q.num), q.den,
                                               ctx.digits, dir);

    // Scale overlap: form u = x*den + num exactly, then divide once, so the
    // result is rounded exactly once.
    const std::int64_t qexp = detail::digit_count(ctx.base, std::abs(q.num)) -
                              detail::digit_count(ctx.base, q.den) + 1;
    const std::int64_t span = std::abs(x.exponent - qexp);
    if (span <= 2 * ctx.digits + 64) {
        MpFloat u = detail::add_exact(ctx, detail::muli_exact(ctx, x, q.den),
                                      detail::int_exact(ctx, q.num));
        if (u.is_zero()) return mp_zero();
        return detail::divi_round(ctx, u, q.den, ctx.digits, dir);
    }
    // Far apart: a chopped approximation of num/den keeps the same sign and
    // stickiness, which is all the rounding decision can see from here.
    Context chop_ctx = ctx;
    chop_ctx.round_rule = Round::Truncate;
    MpFloat qhat = detail::divi_round(chop_ctx, detail::int_exact(ctx, q.num), q.den,
                                      ctx.digits + 4, Dir::Chop);
    return add_round(ctx, x, qhat, ctx.digits, dir);
}

MpFloat mul(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    return mul_round(ctx, x, y, ctx.digits, rule_dir(ctx));
}

MpFloat mul_small(const Context& ctx, const MpFloat& x, std::int64_t i) {
    return muli_round(ctx, x, i, ctx.digits, rule_dir(ctx));
}

MpFloat mul_rational(const Context& ctx, const MpFloat& x, const Rational& q) {
    if (x.is_zero() || q.num == 0) return mp_zero();
    if (ctx.round_rule == Round::Truncate) {
        // Multiply then divide, each chopped (the historical fast path).
        MpFloat p = muli_round(ctx, x, q.num, ctx.digits, Dir::Chop);
        return divi_round(ctx, p, q.den, ctx.digits, Dir::Chop);
    }
    MpFloat u = detail::muli_exact(ctx, x, q.num);
    return divi_round(ctx, u, q.den, ctx.digits, rule_dir(ctx));
}

MpFloat scale(const Context& ctx, const MpFloat& x, std::int64_t n, std::int64_t j) {
    if (n <= 1 || n > 100) throw RangeError("scale: n must be in (1, 100]");
    if (x.is_zero() || j == 0) return x;
    // Largest chunk n^k that stays comfortably within the word budget.
    std::int64_t chunk_pow = 1, chunk_exp = 0;
    while (chunk_pow <= ctx.max_int / (n * n) && chunk_exp < 62) {
        chunk_pow *= n;
        ++chunk_exp;
    }
    std::int64_t left = std::abs(j);
    MpFloat r = x;
    while (left > 0) {
        std::int64_t take = std::min(left, chunk_exp);
        std::int64_t p = 1;
        for (std::int64_t i = 0; i < take; ++i) p *= n;
        r = j > 0 ? mul_rational(ctx, r, Rational(p, 1)) : mul_rational(ctx, r, Rational(1, p));
        left -= take;
        if (r.is_zero()) break;
    }
    return r;
}

MpFloat from_rational(const Context& ctx, std::int64_t i, std::int64_t j) {
    if (j == 0) throw ZeroDenominator("from_rational: zero denominator");
    if (i == 0) return mp_zero();
    Rational q(i, j);
    return detail::divi_round(ctx, detail::int_exact(ctx, q.num), q.den, ctx.digits,
                              rule_dir(ctx));
}

std::int64_t& div_crossover() {
    static std::int64_t v = 30; // long division below this T under Truncate
    return v;
}

namespace {

// Division-free Newton reciprocal of |x|, accurate to t_target digits with a
// final value guaranteed not to exceed the true reciprocal.
MpFloat newton_recip_mag(const Context& ctx, const MpFloat& x, std::int64_t t_target) {
    // Exact power of the base inverts exactly.
    bool power = x.digit[0] == 1 &&
                 std::all_of(x.digit.begin() + 1, x.digit.end(),
                             [](std::int64_t v) { return v == 0; });
    if (power) {
        MpFloat r;
        r.sign = +1;
        r.exponent = 2 - x.exponent;
        r.digit.assign(static_cast<std::size_t>(t_target), 0);
        r.digit[0] = 1;
        return r;
    }

    // Seed from a long double of the leading fraction digits (enough of
    // them to fill the long double mantissa).
    std::size_t need = 1;
    {
        std::int64_t p = ctx.base;
        while (p < (std::int64_t{1} << 62) / ctx.base) {
            p *= ctx.base;
            ++need;
        }
    }
    long double f = 0;
    const std::size_t take = std::min<std::size_t>(x.digit.size(), need);
    long double w = 1.0L / static_cast<long double>(ctx.base);
    for (std::size_t i = 0; i < take; ++i) {
        f += static_cast<long double>(x.digit[i]) * w;
        w /= static_cast<long double>(ctx.base);
    }
    long double inv = 1.0L / (f * static_cast<long double>(ctx.base)); // in (1/B, 1)
    MpFloat y;
    y.sign = +1;
    y.exponent = 1 - x.exponent; // 1/x = (1/(f*B)) * B^(1-e)
    std::int64_t t0 = std::max<std::int64_t>(2, static_cast<std::int64_t>(
                                                    14.0 / std::max(1.0, std::log10(
                                                                             static_cast<double>(
                                                                                 ctx.base)))));
    if (t0 > t_target) t0 = t_target;
    y.digit.assign(static_cast<std::size_t>(t0), 0);
    for (std::int64_t i = 0; i < t0; ++i) {
        inv *= static_cast<long double>(ctx.base);
        std::int64_t dgt = static_cast<std::int64_t>(inv);
        if (dgt > ctx.base - 1) dgt = ctx.base - 1;
        if (dgt < 0) dgt = 0;
        y.digit[static_cast<std::size_t>(i)] = dgt;
        inv -= static_cast<long double>(dgt);
    }
    if (y.digit[0] == 0) y.digit[0] = 1; // defensive seed floor

    MpFloat ax = abs_value(x);
    std::int64_t t = t0;
    while (t < t_target + 2) {
        t = std::min(t_target + 2, 2 * t + 1);
        Context wc = ctx.with_digits(t);
        MpFloat xt = move_precision(wc, ax, t);
        MpFloat one = detail::pad_digits(detail::int_exact(wc, 1), t);
        MpFloat p = mul_round(wc, xt, detail::pad_digits(y, t), t, Dir::Nearest);
        MpFloat r = add_round(wc, one, negate(p), t, Dir::Nearest); // 1 - x*y
        MpFloat corr = mul_round(wc, detail::pad_digits(y, t), r, t, Dir::Nearest);
        y = add_round(wc, detail::pad_digits(y, t), corr, t, Dir::Nearest);
    }
    return y;
}

// Exact multiply for verification steps (full product, no rounding).
MpFloat mul_exact(const Context& ctx, const MpFloat& a, const MpFloat& b) {
    if (a.is_zero() || b.is_zero()) return mp_zero();
    return mul_round(ctx, a, b, static_cast<std::int64_t>(a.digit.size() + b.digit.size()),
                     Dir::Chop); // full length: nothing is discarded
}

} // namespace

MpFloat recip(const Context& ctx, const MpFloat& x) {
    if (x.is_zero()) throw DivisionByZero("recip of zero");
    if (ctx.round_rule != Round::Truncate || ctx.digits <= div_crossover())
        return div_round(ctx, detail::pad_digits(detail::int_exact(ctx, 1), ctx.digits), x,
                         ctx.digits, rule_dir(ctx));
    // Newton path; correct the last place so the result is the exact
    // truncation of 1/x.
    MpFloat y = newton_recip_mag(ctx, x, ctx.digits);
    MpFloat q = detail::normalize_round(ctx, detail::raw_from(y), ctx.digits, Dir::Chop);
    q.sign = x.sign;
    // q is within a few last-place units of trunc(1/|x|); nudge until
    // |q| <= 1/|x| < |q| + ulp.
    MpFloat ax = abs_value(x);
    MpFloat aq = abs_value(q);
    MpFloat one = detail::pad_digits(detail::int_exact(ctx, 1), ctx.digits);
    for (int guard = 0; guard < 8; ++guard) {
        MpFloat u = ulp_of(ctx, aq);
        if (detail::compare_mag(mul_exact(ctx, aq, ax), one) > 0) {
            aq = detail::add_round(ctx, aq, negate(u), ctx.digits, Dir::Down);
            continue;
        }
        MpFloat next = detail::add_round(ctx, aq, u, ctx.digits, Dir::Up);
        if (detail::compare_mag(mul_exact(ctx, next, ax), one) <= 0) {
            aq = next;
            continue;
        }
        break;
    }
    aq.sign = q.is_zero() ? 0 : x.sign;
    return aq;
}

MpFloat div(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    if (y.is_zero()) throw DivisionByZero("division by zero");
    if (x.is_zero()) return mp_zero();
    if (ctx.round_rule != Round::Truncate || ctx.digits <= div_crossover())
        return div_round(ctx, x, y, ctx.digits, rule_dir(ctx));
    // Newton reciprocal then multiply, with an exact last-place correction
    // so truncation stays the exact chop of x/y.
    const std::int64_t tg = ctx.digits + 4;
    Context wc = ctx.with_digits(tg);
    MpFloat r = newton_recip_mag(wc, y, tg);
    MpFloat q = mul_round(ctx, move_precision(wc, abs_value(x), tg), r, ctx.digits, Dir::Chop);
    q.sign = x.sign * y.sign;
    MpFloat aq = abs_value(q);
    MpFloat ax = abs_value(x), ay = abs_value(y);
    for (int guard = 0; guard < 8; ++guard) {
        MpFloat u = ulp_of(ctx, aq);
        if (detail::compare_mag(mul_exact(ctx, aq, ay), ax) > 0) {
            aq = detail::add_round(ctx, aq, negate(u), ctx.digits, Dir::Down);
            continue;
        }
        MpFloat next = detail::add_round(ctx, aq, u, ctx.digits, Dir::Up);
        if (detail::compare_mag(mul_exact(ctx, next, ay), ax) <= 0) {
            aq = next;
            continue;
        }
        break;
    }
    if (!aq.is_zero()) aq.sign = x.sign * y.sign;
    return aq;
}

MpFloat div_small(const Context& ctx, const MpFloat& x, std::int64_t i) {
    if (i == 0) throw DivisionByZero("division by zero integer");
    return divi_round(ctx, x, i, ctx.digits, rule_dir(ctx));
}

// ---- comparisons ----------------------------------------------------------

int compare(const Context&, const MpFloat& x, const MpFloat& y) {
    if (x.sign != y.sign) return x.sign > y.sign ? +1 : -1;
    if (x.sign == 0) return 0;
    int m = detail::compare_mag(x, y);
    return x.sign > 0 ? m : -m;
}

int compare_small(const Context& ctx, const MpFloat& x, std::int64_t i) {
    return compare_rational(ctx, x, i, 1);
}

int compare_rational(const Context& ctx, const MpFloat& x, std::int64_t i, std::int64_t j) {
    if (j == 0) throw ZeroDenominator("compare_rational: zero denominator");
    if (j < 0) {
        i = -i;
        j = -j;
    }
    const int si = i > 0 ? +1 : (i < 0 ? -1 : 0);
    if (x.sign != si) return x.sign > si ? +1 : -1;
    if (x.sign == 0) return 0;
    // Compare x*j with i; the quotient itself is never formed.
    MpFloat xj = detail::muli_exact(ctx, x, j);
    MpFloat iv = detail::int_exact(ctx, i);
    int m = detail::compare_mag(xj, iv);
    return x.sign > 0 ? m : -m;
}

int compare_magnitude(const Context&, const MpFloat& x, const MpFloat& y) {
    return detail::compare_mag(x, y);
}

bool eq(const Context& c, const MpFloat& x, const MpFloat& y) { return compare(c, x, y) == 0; }
bool ne(const Context& c, const MpFloat& x, const MpFloat& y) { return compare(c, x, y) != 0; }
bool lt(const Context& c, const MpFloat& x, const MpFloat& y) { return compare(c, x, y) < 0; }
bool le(const Context& c, const MpFloat& x, const MpFloat& y) { return compare(c, x, y) <= 0; }
bool gt(const Context& c, const MpFloat& x, const MpFloat& y) { return compare(c, x, y) > 0; }
bool ge(const Context& c, const MpFloat& x, const MpFloat& y) { return compare(c, x, y) >= 0; }

// ---- exact selectors --------------------------------------------------

MpFloat abs_value(const MpFloat& x) {
    MpFloat r = x;
    if (r.sign < 0) r.sign = +1;
    return r;
}

MpFloat negate(const MpFloat& x) {
    MpFloat r = x;
    r.sign = -r.sign;
    return r;
}

MpFloat sign_transfer(const Context&, const MpFloat& x, const MpFloat& y) {
    if (y.is_zero()) return mp_zero();
    MpFloat r = abs_value(x);
    if (!r.is_zero()) r.sign = y.sign;
    return r;
}

MpFloat min_value(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    return compare(ctx, x, y) <= 0 ? x : y;
}

MpFloat max_value(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    return compare(ctx, x, y) >= 0 ? x : y;
}

MpFloat dim(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    if (compare(ctx, x, y) <= 0) return mp_zero();
    return sub(ctx, x, y);
}

// ---- integer parts ----------------------------------------------------

MpFloat frac_part(const Context& ctx, const MpFloat& x) {
    if (x.is_zero()) return mp_zero();
    const std::int64_t e = x.exponent;
    const std::int64_t l = static_cast<std::int64_t>(x.digit.size());
    if (e <= 0) return x;
    if (e >= l) return mp_zero();
    detail::RawMp u;
    u.sign = x.sign;
    u.exp = 0;
    u.dig.assign(x.digit.begin() + static_cast<std::ptrdiff_t>(e), x.digit.end());
    return detail::normalize_round(ctx, std::move(u), ctx.digits, Dir::Chop);
}

MpFloat int_part(const Context& ctx, const MpFloat& x) {
    if (x.is_zero()) return mp_zero();
    const std::int64_t e = x.exponent;
    const std::int64_t l = static_cast<std::int64_t>(x.digit.size());
    if (e <= 0) return mp_zero();
    if (e >= l) return x;
    detail::RawMp u;
    u.sign = x.sign;
    u.exp = e;
    u.dig.assign(x.digit.begin(), x.digit.begin() + static_cast<std::ptrdiff_t>(e));
    return detail::normalize_round(ctx, std::move(u), ctx.digits, Dir::Chop);
}

bool is_integer(const Context& ctx, const MpFloat& x) {
    return frac_part(ctx, x).is_zero();
}

MpFloat ceil(const Context& ctx, const MpFloat& x) {
    MpFloat n = int_part(ctx, x);
    if (frac_part(ctx, x).is_zero()) return n;
    if (x.sign > 0) return detail::add_round(ctx, n, detail::int_exact(ctx, 1), ctx.digits,
                                             Dir::Chop);
    return n;
}

MpFloat floor(const Context& ctx, const MpFloat& x) {
    MpFloat n = int_part(ctx, x);
    if (frac_part(ctx, x).is_zero()) return n;
    if (x.sign < 0) return detail::add_round(ctx, n, detail::int_exact(ctx, -1), ctx.digits,
                                             Dir::Chop);
    return n;
}

std::int64_t to_small_int(const Context& ctx, const MpFloat& x) {
    if (x.is_zero()) return 0;
    std::int64_t e = x.exponent;
    if (e <= 0) return 0;
    const std::int64_t l = static_cast<std::int64_t>(x.digit.size());
    if (e > l + 40) throw OutOfRange("to_small_int: integer part too large");
    unsigned __int128 acc = 0;
    const unsigned __int128 lim = static_cast<unsigned __int128>(ctx.max_int);
    for (std::int64_t i = 0; i < e; ++i) {
        acc = acc * static_cast<unsigned __int128>(ctx.base) +
              static_cast<unsigned __int128>(i < l ? x.digit[static_cast<std::size_t>(i)] : 0);
        if (acc > lim) throw OutOfRange("to_small_int: integer part exceeds MXINT");
    }
    return x.sign * static_cast<std::int64_t>(acc);
}

std::int64_t to_small_int_or_zero(const Context& ctx, const MpFloat& x) {
    try {
        return to_small_int(ctx, x);
    } catch (const OutOfRange&) {
        return 0;
    }
}

// ---- modulo / gcd -----------------------------------------------------

MpFloat modulo(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    if (y.is_zero()) return mp_zero(); // by convention, not an error
    if (x.is_zero()) return mp_zero();
    if (detail::compare_mag(x, y) < 0) return x; // int(x/y) == 0
    std::vector<std::int64_t> yd = y.digit;
    while (yd.size() > 1 && yd.back() == 0) yd.pop_back();
    const std::int64_t n = static_cast<std::int64_t>(yd.size());
    const std::int64_t span = x.exponent - y.exponent; // >= 0 here
    if (span > 1000000) throw RangeError("modulo: operand magnitudes too far apart");

    // Put x and y on a common digit grid and take the integer remainder;
    // truncating the quotient at B^0 relative to y leaves exactly x mod y.
    const std::int64_t lx = static_cast<std::int64_t>(x.digit.size());
    const std::int64_t lxp = std::max(lx, n + span);
    detail::Vec u(x.digit.begin(), x.digit.end());
    u.resize(static_cast<std::size_t>(lxp), 0);
    detail::Vec v = yd;
    v.resize(static_cast<std::size_t>(lxp - span), 0);
    auto [q, rem] = detail::vec_divmod(std::move(u), std::move(v), ctx.base);
    (void)q;
    if (rem.empty()) return mp_zero();

    detail::RawMp raw;
    raw.sign = x.sign;
    raw.exp = static_cast<std::int64_t>(rem.size()) + x.exponent - lxp;
    raw.dig = std::move(rem);
    return detail::normalize_round(ctx, std::move(raw), ctx.digits, Dir::Chop);
}

MpFloat gcd(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    if (!is_integer(ctx, x) || !is_integer(ctx, y))
        throw NotAnInteger("gcd arguments must be exact integers");
    if (!x.is_zero() && x.exponent > ctx.digits)
        throw NotAnInteger("gcd: |x| must be below B^T");
    if (!y.is_zero() && y.exponent > ctx.digits)
        throw NotAnInteger("gcd: |y| must be below B^T");
    MpFloat a = abs_value(x), b = abs_value(y);
    while (!b.is_zero()) {
        MpFloat r = modulo(ctx, a, b);
        a = b;
        b = r;
    }
    return a;
}

std::pair<MpFloat, MpFloat> gcd_reduce(const Context& ctx, const MpFloat& x, const MpFloat& y) {
    MpFloat g = gcd(ctx, x, y);
    if (g.is_zero()) return {x, y};
    Context chop = ctx;
    chop.round_rule = Round::Truncate;
    MpFloat xr = detail::div_round(chop, x, g, ctx.digits, Dir::Chop);
    MpFloat yr = detail::div_round(chop, y, g, ctx.digits, Dir::Chop);
    return {xr, yr};
}

std::pair<MpFloat, MpFloat> complex_mul(const Context& ctx, const MpFloat& xr,
                                        const MpFloat& xi, const MpFloat& yr,
                                        const MpFloat& yi) {
    MpFloat zr = sub(ctx, mul(ctx, xr, yr), mul(ctx, xi, yi));
    MpFloat zi = add(ctx, mul(ctx, xr, yi), mul(ctx, xi, yr));
    return {zr, zi};
}

// ---- guarded final rounding (declared in detail/kernel.hpp) ---------------

namespace detail {

namespace {

MpFloat slack_value(const Context& ctx, std::int64_t weight_exp, int slack) {
    // slack * B^(weight_exp): exact tiny value
    MpFloat s = int_exact(ctx, slack);
    s.exponent += weight_exp;
    return s;
}

MpFloat final_round_any(const Context& ctx, const MpFloat& x, int slack_ulp, bool absolute) {
    if (x.is_zero()) return mp_zero();
    if (ctx.round_rule == Round::Truncate || ctx.round_rule == Round::NearestEven)
        return normalize_round(ctx, raw_from(x), ctx.digits, Dir::Nearest);
    const std::int64_t w = absolute ? -ctx.digits : x.exponent - ctx.digits;
    MpFloat adj = slack_value(ctx, w, slack_ulp);
    if (ctx.round_rule == Round::Down)
        return add_round(ctx, x, negate(adj), ctx.digits, Dir::Down);
    return add_round(ctx, x, adj, ctx.digits, Dir::Up);
}

} // namespace

MpFloat final_round(const Context& ctx, const MpFloat& x, int slack_ulp) {
    return final_round_any(ctx, x, slack_ulp, false);
}

MpFloat final_round_abs(const Context& ctx, const MpFloat& x, int slack_ulp) {
    return final_round_any(ctx, x, slack_ulp, true);
}

} // namespace detail

} // namespace mp
