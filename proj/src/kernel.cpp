#include "mp/detail/kernel.hpp"

#include <cassert>
#include <cstdlib>

#include "mp/error.hpp"

namespace mp::detail {

Dir dir_from_rule(Round r) {
    switch (r) {
    case Round::Truncate: return Dir::Chop;
    case Round::NearestEven: return Dir::Nearest;
    case Round::Down: return Dir::Down;
    case Round::Up: return Dir::Up;
    }
    return Dir::Chop;
}

Dir add_truncate_dir(int sign_x, int sign_y) {
    return (static_cast<std::int64_t>(sign_x) * sign_y < 0) ? Dir::Away : Dir::Chop;
}

RawMp raw_from(const MpFloat& x) {
    RawMp u;
    u.sign = x.sign;
    u.exp = x.exponent;
    u.dig = x.digit;
    u.tail = Tail{};
    return u;
}

void carry_fix(RawMp& u, std::int64_t base) {
    std::int64_t carry = 0;
    for (std::size_t i = u.dig.size(); i-- > 0;) {
        std::int64_t v = u.dig[i] + carry;
        carry = v / base;
        v -= carry * base;
        if (v < 0) { // fix truncating division up to floor semantics
            v += base;
            carry -= 1;
        }
        u.dig[i] = v;
    }
    while (carry > 0) {
        u.dig.insert(u.dig.begin(), carry % base);
        carry /= base;
        u.exp += 1;
    }
    assert(carry == 0 && "caller produced a negative magnitude");
}

namespace {

bool any_nonzero(const std::vector<std::int64_t>& dig, std::size_t from) {
    for (std::size_t i = from; i < dig.size(); ++i)
        if (dig[i] != 0) return true;
    return false;
}

bool sticky(const RawMp& u, std::size_t from) {
    return any_nonzero(u.dig, from) || u.tail.sign != 0;
}

// Compares the fraction formed by u's digits from position `from` onward
// (plus the tail) against one half of a unit at position from-1.
int cmp_tail_half(const RawMp& u, std::size_t from, std::int64_t base) {
    for (std::size_t i = from; i < u.dig.size(); ++i) {
        std::int64_t tw = 2 * u.dig[i];
        if (tw > base) return +1;
        if (tw < base - 1) return -1;
        if (tw == base) // even base: the rest decides the tie
            return sticky(u, i + 1) ? +1 : 0;
        // tw == base-1 (odd base): compare the rest with one half again
    }
    if (u.tail.sign == 0) return -1;
    if (u.tail.half != tail_half_unset) return u.tail.half;
    // Unknown tail: bias upward. Only guarded approximate paths land here,
    // and their error budget covers the sub-ulp bias.
    return +1;
}

} // namespace

MpFloat normalize_round(const Context& ctx, RawMp u, std::int64_t t_out, Dir dir) {
    const std::int64_t base = ctx.base;
    assert(t_out >= 1);

    if (u.sign == 0) return mp_zero();
    carry_fix(u, base);

    // Fold a negative tail into the digits: v - e == (v - unit) + (unit - e).
    if (u.tail.sign < 0) {
        if (!any_nonzero(u.dig, 0)) {
            // Pure negative epsilon below an all-zero window: flip the value.
            u.sign = -u.sign;
            u.tail.sign = +1;
            if (u.tail.half != tail_half_unset) u.tail.half = -u.tail.half;
        } else {
            std::size_t i = u.dig.size();
            while (i-- > 0) {
                if (u.dig[i] > 0) {
                    u.dig[i] -= 1;
                    for (std::size_t j = i + 1; j < u.dig.size(); ++j) u.dig[j] = base - 1;
                    break;
                }
            }
            u.tail.sign = +1;
            if (u.tail.half != tail_half_unset) u.tail.half = -u.tail.half;
        }
    }

    std::size_t lead = 0;
    while (lead < u.dig.size() && u.dig[lead] == 0) ++lead;
    if (lead == u.dig.size()) {
        assert(u.tail.sign == 0 && "tail-only value cannot be normalized");
        return mp_zero();
    }
    if (lead > 0) {
        u.dig.erase(u.dig.begin(), u.dig.begin() + static_cast<std::ptrdiff_t>(lead));
        u.exp -= static_cast<std::int64_t>(lead);
    }
    assert(u.tail.sign == 0 || static_cast<std::int64_t>(u.dig.size()) >= t_out);

    bool increment = false;
    const std::size_t guard_from = static_cast<std::size_t>(t_out);
    const bool has_discard = guard_from < u.dig.size() ? sticky(u, guard_from) : u.tail.sign != 0;
    Dir eff = dir;
    if (dir == Dir::Down) eff = (u.sign > 0) ? Dir::Chop : Dir::Away;
    if (dir == Dir::Up) eff = (u.sign > 0) ? Dir::Away : Dir::Chop;
    if (eff == Dir::Away) {
        increment = has_discard;
    } else if (eff == Dir::Nearest && has_discard) {
        int c = cmp_tail_half(u, guard_from, base);
        if (c > 0)
            increment = true;
        else if (c == 0) {
            std::int64_t last =
                guard_from >= 1 && guard_from - 1 < u.dig.size() ? u.dig[guard_from - 1] : 0;
            increment = (last % 2) != 0;
        }
    }

    u.dig.resize(static_cast<std::size_t>(t_out), 0);
    if (increment) {
        std::size_t i = u.dig.size();
        bool carry = true;
        while (i-- > 0 && carry) {
            if (++u.dig[i] == base) u.dig[i] = 0;
            else carry = false;
        }
        if (carry) { // 0.FF..F became 1.00..0
            u.dig.assign(static_cast<std::size_t>(t_out), 0);
            u.dig[0] = 1;
            u.exp += 1;
        }
    }

    if (u.exp > ctx.max_exp) return overflow_result(ctx, u.sign);
    if (u.exp < 1 - ctx.max_exp) return underflow_result(ctx);

    if (u.exp > ctx.exp_seen_max) ctx.exp_seen_max = u.exp;
    if (u.exp < ctx.exp_seen_min) ctx.exp_seen_min = u.exp;

    MpFloat r;
    r.sign = u.sign;
    r.exponent = u.exp;
    r.digit = std::move(u.dig);
    return r;
}

std::int64_t guard_digits_for(std::int64_t base, std::int64_t n) {
    std::int64_t g = 0;
    std::int64_t p = 1;
    n = n < 0 ? -n : n;
    while (p < n) {
        if (p > (std::int64_t{1} << 62) / base) return g + 1;
        p *= base;
        ++g;
    }
    return g;
}

std::int64_t guarded_digits(const Context& ctx, std::int64_t loss_units) {
    if (loss_units < 1) loss_units = 1;
    if (loss_units > (1LL << 40)) loss_units = 1LL << 40;
    return ctx.digits + 1 + guard_digits_for(ctx.base, 100 * loss_units);
}

int compare_mag(const MpFloat& x, const MpFloat& y) {
    if (x.is_zero() && y.is_zero()) return 0;
    if (x.is_zero()) return -1;
    if (y.is_zero()) return +1;
    if (x.exponent != y.exponent) return x.exponent > y.exponent ? +1 : -1;
    const std::size_t n = x.digit.size() > y.digit.size() ? x.digit.size() : y.digit.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t a = i < x.digit.size() ? x.digit[i] : 0;
        std::int64_t b = i < y.digit.size() ? y.digit[i] : 0;
        if (a != b) return a > b ? +1 : -1;
    }
    return 0;
}

} // namespace mp::detail
