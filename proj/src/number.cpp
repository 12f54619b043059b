#include "mp/number.hpp"

#include <cassert>
#include <cstdlib>

#include "mp/detail/kernel.hpp"
#include "mp/error.hpp"

namespace mp {

MpFloat mp_zero() { return MpFloat{}; }

MpFloat mp_small(const Context& ctx, std::int64_t value) {
    if (value == 0) return mp_zero();
    MpFloat r;
    r.sign = value > 0 ? +1 : -1;
    std::int64_t v = std::abs(value);
    std::vector<std::int64_t> rev;
    while (v > 0) {
        rev.push_back(v % ctx.base);
        v /= ctx.base;
    }
    r.exponent = static_cast<std::int64_t>(rev.size());
    r.digit.assign(static_cast<std::size_t>(ctx.digits), 0);
    if (r.exponent > ctx.digits)
        throw OutOfRange("mp_small: integer needs more than T digits");
    for (std::size_t i = 0; i < rev.size(); ++i)
        r.digit[rev.size() - 1 - i] = rev[i];
    return r;
}

MpFloat ulp_of(const Context& ctx, const MpFloat& x) {
    if (x.is_zero()) return mp_zero();
    MpFloat r;
    r.sign = +1;
    r.exponent = x.exponent - ctx.digits + 1;
    r.digit.assign(static_cast<std::size_t>(ctx.digits), 0);
    r.digit[0] = 1;
    return r;
}

MpFloat overflow_result(const Context& ctx, int sign) {
    ctx.exp_seen_max = ctx.max_exp + 1;
    MpFloat r = max_real(ctx);
    r.sign = sign >= 0 ? +1 : -1;
    return r;
}

MpFloat underflow_result(const Context& ctx) {
    ctx.underflow_count += 1;
    ctx.exp_seen_min = -ctx.max_exp;
    if (ctx.max_underflows > 0 && ctx.underflow_count >= ctx.max_underflows)
        throw UnderflowLimit("underflow limit reached");
    switch (ctx.round_rule) {
    case Round::Down: {
        MpFloat r = min_real(ctx);
        r.sign = -1;
        return r;
    }
    case Round::Up: return min_real(ctx);
    default: return mp_zero();
    }
}

PackedMp pack(const Context& ctx, const MpFloat& x) {
    const std::size_t t = static_cast<std::size_t>(ctx.digits);
    PackedMp p;
    p.word.assign((t + 3) / 2, 0);
    if (x.is_zero()) return p;
    assert(x.digit.size() >= t);
    auto digit = [&](std::size_t i) { return i < t ? x.digit[i] : 0; };
    p.word[0] = (digit(0) * ctx.base + digit(1)) * x.sign;
    p.word[1] = x.exponent;
    std::size_t w = 2;
    for (std::size_t i = 2; i < t; i += 2)
        p.word[w++] = digit(i) * ctx.base + digit(i + 1);
    return p;
}

MpFloat unpack(const Context& ctx, const PackedMp& p) {
    const std::size_t t = static_cast<std::size_t>(ctx.digits);
    const std::size_t need = (t + 3) / 2;
    if (p.is_zero()) return mp_zero();
    if (p.word.size() < need) throw FormatError("unpack: record too short");
    const std::int64_t sq = ctx.base * ctx.base;
    MpFloat r;
    r.sign = p.word[0] > 0 ? +1 : -1;
    r.exponent = p.word[1];
    r.digit.assign(t, 0);
    std::int64_t first = std::abs(p.word[0]);
    if (first >= sq || first <= 1) throw FormatError("unpack: bad leading word");
    r.digit[0] = first / ctx.base;
    if (t > 1) r.digit[1] = first % ctx.base;
    std::size_t w = 2;
    for (std::size_t i = 2; i < t; i += 2) {
        std::int64_t v = p.word[w++];
        if (v < 0 || v >= sq) throw FormatError("unpack: digit pair out of range");
        r.digit[i] = v / ctx.base;
        if (i + 1 < t) r.digit[i + 1] = v % ctx.base;
    }
    if (r.digit[0] < 1) throw FormatError("unpack: not normalized");
    return r;
}

MpFloat move_precision(const Context& ctx, const MpFloat& x, std::int64_t target_digits) {
    if (target_digits < 1) throw RangeError("move_precision: target must be >= 1");
    if (x.is_zero()) return mp_zero();
    if (static_cast<std::int64_t>(x.digit.size()) <= target_digits) {
        MpFloat r = x;
        r.digit.resize(static_cast<std::size_t>(target_digits), 0);
        return r;
    }
    detail::RawMp u = detail::raw_from(x);
    return detail::normalize_round(ctx, std::move(u), target_digits,
                                   detail::dir_from_rule(ctx.round_rule));
}

int sign_of(const MpFloat& x) { return x.sign; }

int sign_of(const PackedMp& p) {
    if (p.is_zero()) return 0;
    return p.word[0] > 0 ? +1 : -1;
}

std::int64_t exponent_of(const Context& ctx, const MpFloat& x) {
    if (x.is_zero()) return -ctx.max_exp;
    return x.exponent;
}

std::int64_t digit_at(const Context& ctx, const MpFloat& x, std::int64_t n) {
    if (n < 1 || n > ctx.digits) throw RangeError("digit_at: index out of [1, T]");
    if (x.is_zero()) return 0;
    return x.digit[static_cast<std::size_t>(n - 1)];
}

MpFloat with_sign(const Context&, const MpFloat& x, int sign) {
    if (sign == 0) return mp_zero();
    if (x.is_zero()) throw RangeError("with_sign: cannot give zero a sign");
    MpFloat r = x;
    r.sign = sign > 0 ? +1 : -1;
    return r;
}

MpFloat with_exponent(const Context& ctx, const MpFloat& x, std::int64_t e) {
    if (x.is_zero()) return mp_zero();
    if (e > ctx.max_exp) return overflow_result(ctx, x.sign);
    if (e < 1 - ctx.max_exp) return underflow_result(ctx);
    MpFloat r = x;
    r.exponent = e;
    return r;
}

MpFloat with_digit(const Context& ctx, const MpFloat& x, std::int64_t n, std::int64_t value) {
    if (n < 1 || n > ctx.digits) throw RangeError("with_digit: index out of [1, T]");
    if (value < 0 || value >= ctx.base) throw RangeError("with_digit: value out of [0, B)");
    if (n == 1 && value < 1) throw RangeError("with_digit: leading digit must be positive");
    if (x.is_zero()) throw RangeError("with_digit: cannot set digits of zero");
    MpFloat r = x;
    r.digit[static_cast<std::size_t>(n - 1)] = value;
    return r;
}

} // namespace mp
