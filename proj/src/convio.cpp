#include "mp/convio.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <cstring>

#include "mp/arith.hpp"
#include "mp/detail/bigpow.hpp"
#include "mp/detail/cores.hpp"
#include "mp/detail/kernel.hpp"
#include "mp/error.hpp"

namespace mp {

using detail::Dir;
using detail::Vec;

char digit_char(std::int64_t v) {
    if (v < 0 || v > 15) return '*';
    return static_cast<char>(v < 10 ? '0' + v : 'A' + (v - 10));
}

std::int64_t char_digit(const Context& ctx, char c) {
    std::int64_t v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
    else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
    if (v >= ctx.in_base) return -1;
    return v;
}

std::int64_t radix_exponent_bound(std::int64_t b1, std::int64_t b2, std::int64_t n) {
    if (b1 <= 1 || b2 <= 0) throw ConfigError("radix_exponent_bound: bad radices");
    if (n == 0 || b2 == 1) return 0;
    const std::int64_t an = std::llabs(n);
    std::int64_t j;
    if (an <= 100000) {
        // exact minimal j with b1^j >= b2^an
        double est = static_cast<double>(an) * std::log(static_cast<double>(b2)) /
                     std::log(static_cast<double>(b1));
        j = static_cast<std::int64_t>(est) - 2;
        if (j < 0) j = 0;
        while (detail::cmp_pow(static_cast<std::uint64_t>(b1), j,
                               static_cast<std::uint64_t>(b2), an) < 0)
            ++j;
    } else {
        double est = static_cast<double>(an) * std::log(static_cast<double>(b2)) /
                     std::log(static_cast<double>(b1));
        j = static_cast<std::int64_t>(std::ceil(est)) + 1;
    }
    return n > 0 ? j : -j;
}

std::int64_t digits_for(const Context& ctx, std::int64_t n_places) {
    if (n_places < 1) throw ConfigError("digits_for: places must be >= 1");
    return radix_exponent_bound(ctx.base, ctx.out_base, n_places - 1) + 1;
}

// ---- parsing ---------------------------------------------------------------

namespace {

// Converts a digit string in radix ib to an exact extended value.
MpFloat mantissa_exact(const Context& ctx, const std::vector<std::int64_t>& digits, int sign,
                       std::int64_t ib) {
    Vec acc;
    std::int64_t chunk_val = 0, chunk_len = 0;
    std::int64_t max_chunk = 1;
    std::int64_t max_len = 0;
    while (max_chunk <= (std::int64_t{1} << 40) / ib) {
        max_chunk *= ib;
        ++max_len;
    }
    auto flush = [&](std::int64_t p, std::int64_t val) {
        detail::vec_mul_scalar(acc, p, ctx.base);
        // add val (< p) into the tail of acc
        Vec add;
        std::int64_t v = val;
        while (v > 0) {
            add.insert(add.begin(), v % ctx.base);
            v /= ctx.base;
        }
        if (add.size() > acc.size()) acc.insert(acc.begin(), add.size() - acc.size(), 0);
        std::int64_t carry = 0;
        std::size_t ai = acc.size(), bi = add.size();
        while (bi > 0 || carry) {
            if (ai == 0) {
                acc.insert(acc.begin(), 0);
                ++ai;
            }
            --ai;
            std::int64_t t = acc[ai] + carry + (bi > 0 ? add[--bi] : 0);
            carry = t >= ctx.base ? 1 : 0;
            acc[ai] = carry ? t - ctx.base : t;
            if (bi == 0 && carry == 0) break;
        }
    };
    for (auto d : digits) {
        chunk_val = chunk_val * ib + d;
        if (++chunk_len == max_len) {
            flush(max_chunk, chunk_val);
            chunk_val = 0;
            chunk_len = 0;
        }
    }
    if (chunk_len > 0) {
        std::int64_t p = 1;
        for (std::int64_t i = 0; i < chunk_len; ++i) p *= ib;
        flush(p, chunk_val);
    }
    detail::vec_trim(acc);
    if (acc.empty()) return mp_zero();
    MpFloat r;
    r.sign = sign;
    r.exponent = static_cast<std::int64_t>(acc.size());
    r.digit = std::move(acc);
    return r;
}

Dir parse_dir(const Context& ctx) {
    switch (ctx.round_rule) {
    case Round::Down: return Dir::Down;
    case Round::Up: return Dir::Up;
    default: return Dir::Nearest; // rules 0 and 1 both round to nearest
    }
}

} // namespace

MpFloat parse(const Context& ctx, std::string_view text) {
    const std::int64_t ib = ctx.in_base;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_blanks = [&] {
        while (i < n && text[i] == ' ') ++i;
    };

    skip_blanks();
    int sign = +1;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
        sign = text[i] == '-' ? -1 : +1;
        ++i;
        skip_blanks(); // blanks between the sign and the number are fine
    }

    std::vector<std::int64_t> digits;
    std::int64_t frac = 0;
    bool seen_point = false;
    bool any_digit = false;
    while (i < n) {
        char c = text[i];
        std::int64_t v = char_digit(ctx, c);
        if (v >= 0) {
            digits.push_back(v);
            if (seen_point) ++frac;
            any_digit = true;
            ++i;
        } else if (c == '.') {
            if (seen_point) throw ParseError("second point in number");
            seen_point = true;
            ++i;
        } else {
            break;
        }
    }
    if (!any_digit) throw ParseError("no digits in number");

    std::int64_t exp_value = 0;
    if (i < n && text[i] != ' ') {
        char c = text[i];
        bool marker = false;
        if (ib <= 14 && (c == 'E' || c == 'e' || c == 'D' || c == 'd')) marker = true;
        if (c == '$' || c == ctx.exp_char) marker = true;
        int esign = +1;
        if (marker) {
            ++i;
            if (i < n && (text[i] == '+' || text[i] == '-')) {
                esign = text[i] == '-' ? -1 : +1;
                ++i;
            }
        } else if (c == '+' || c == '-') {
            esign = c == '-' ? -1 : +1;
            ++i;
        } else {
            throw ParseError("unexpected character in number");
        }
        bool any = false;
        std::int64_t v = 0;
        while (i < n) {
            std::int64_t d = char_digit(ctx, text[i]);
            if (d < 0) break;
            any = true;
            if (v < (std::int64_t{1} << 60)) v = v * ib + d;
            ++i;
        }
        if (!any) throw ParseError("empty exponent");
        exp_value = esign * v;
    }
    skip_blanks();
    if (i != n) throw ParseError("trailing characters in number");

    MpFloat m = mantissa_exact(ctx, digits, sign, ib);
    if (m.is_zero()) return mp_zero();
    const std::int64_t s = exp_value - frac;
    const Dir dir = parse_dir(ctx);

    // Early range check: |value| ~ ib^(digits+s); representable magnitudes
    // span B^(-M)..B^M.
    {
        const double lg_ib = std::log2(static_cast<double>(ib));
        const double lg_b = std::log2(static_cast<double>(ctx.base));
        double e2 = (static_cast<double>(m.exponent) + static_cast<double>(s)) * lg_ib;
        double cap = (static_cast<double>(ctx.max_exp) + 2) * lg_b;
        if (e2 > cap + 64) return overflow_result(ctx, sign);
        if (e2 < -cap - 64) return underflow_result(ctx);
    }

    const std::int64_t exact_cap = 4 * ctx.digits + 2048;
    if (s == 0)
        return detail::normalize_round(ctx, detail::raw_from(m), ctx.digits, dir);
    if (std::llabs(s) <= exact_cap) {
        if (s > 0) {
            Vec u = m.digit;
            detail::vec_mul_pow(u, ib, s, ctx.base);
            detail::RawMp raw;
            raw.sign = m.sign;
            raw.exp = static_cast<std::int64_t>(u.size());
            raw.dig = std::move(u);
            return detail::normalize_round(ctx, std::move(raw), ctx.digits, dir);
        }
        Vec pw{1};
        detail::vec_mul_pow(pw, ib, -s, ctx.base);
        MpFloat den;
        den.sign = +1;
        den.exponent = static_cast<std::int64_t>(pw.size());
        den.digit = std::move(pw);
        return detail::div_round(ctx, m, den, ctx.digits, dir);
    }

    // Huge exponent: guarded power and one slack-aware final rounding.
    Context wc = ctx.with_digits(detail::guarded_digits(ctx, 512));
    wc.round_rule = Round::Truncate;
    MpFloat p = detail::pad_digits(detail::int_exact(wc, 1), wc.digits);
    MpFloat b_ib = detail::pad_digits(detail::int_exact(wc, ib), wc.digits);
    std::int64_t e = std::llabs(s);
    MpFloat sq = b_ib;
    while (e > 0) {
        if (e & 1) p = mul(wc, p, sq);
        if ((e >>= 1) != 0) sq = mul(wc, sq, sq);
        if (p.is_zero() || wc.overflow_seen()) break;
    }
    MpFloat mv = move_precision(wc, m, wc.digits);
    MpFloat v = s > 0 ? mul(wc, mv, p) : detail::div_round(wc, mv, p, wc.digits, Dir::Chop);
    Context rc = ctx;
    if (rc.round_rule == Round::Truncate) rc.round_rule = Round::NearestEven;
    return detail::final_round(rc, v, 2);
}

MpFloat parse_line(const Context& ctx, std::string_view line) {
    std::size_t cut = line.size();
    if (static_cast<std::int64_t>(cut) > ctx.in_record_len)
        cut = static_cast<std::size_t>(ctx.in_record_len);
    return parse(ctx, line.substr(0, cut));
}

// ---- formatting ------------------------------------------------------------

namespace {

// Exact |x| * ob^s rounded to an integer. The direction is resolved against
// x's sign so Down/Up behave as true value bounds.
Vec scaled_integer(const Context& ctx, const MpFloat& x, std::int64_t s, Dir dir) {
    assert(!x.is_zero());
    const std::int64_t ob = ctx.out_base;
    Vec u(x.digit.begin(), x.digit.end());
    Vec v{1};
    const std::int64_t len = static_cast<std::int64_t>(x.digit.size());
    const std::int64_t be = x.exponent - len; // |x| = digits * B^be
    if (be >= 0) detail::vec_mul_pow(u, ctx.base, be, ctx.base);
    else detail::vec_mul_pow(v, ctx.base, -be, ctx.base);
    if (s >= 0) detail::vec_mul_pow(u, ob, s, ctx.base);
    else detail::vec_mul_pow(v, ob, -s, ctx.base);

    auto [q, rem] = detail::vec_divmod(std::move(u), std::move(v), ctx.base);
    if (rem.empty()) return q;

    Dir eff = dir;
    if (dir == Dir::Down) eff = x.sign > 0 ? Dir::Chop : Dir::Away;
    if (dir == Dir::Up) eff = x.sign > 0 ? Dir::Away : Dir::Chop;
    bool inc = false;
    if (eff == Dir::Away) {
        inc = true;
    } else if (eff == Dir::Nearest) {
        Vec twice = rem;
        detail::vec_mul_scalar(twice, 2, ctx.base);
        Vec vv{1};
        if (be < 0) detail::vec_mul_pow(vv, ctx.base, -be, ctx.base);
        if (s < 0) detail::vec_mul_pow(vv, ob, -s, ctx.base);
        int c = detail::vec_compare(twice, vv);
        if (c > 0) inc = true;
        else if (c == 0) {
            Vec qc = q;
            std::int64_t last = detail::vec_divmod_scalar(qc, ob, ctx.base);
            inc = (last % 2) != 0; // tie to even last out_base digit
        }
    }
    if (inc) {
        std::int64_t carry = 1;
        for (std::size_t i = q.size(); i-- > 0 && carry;) {
            if (++q[i] == ctx.base) q[i] = 0;
            else carry = 0;
        }
        if (carry) q.insert(q.begin(), 1);
    }
    return q;
}

// Base-out_base digit string (no sign) of a base-B integer vector.
std::string to_obase_string(const Context& ctx, Vec q) {
    if (detail::vec_is_zero(q)) return "0";
    std::string out;
    while (!q.empty()) {
        std::int64_t d = detail::vec_divmod_scalar(q, ctx.out_base, ctx.base);
        out.push_back(digit_char(d));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Dir format_dir(const Context& ctx) {
    switch (ctx.round_rule) {
    case Round::Down: return Dir::Down;
    case Round::Up: return Dir::Up;
    default: return Dir::Nearest;
    }
}

// Largest count of out_base digits that T base-B digits can carry:
// max j with ob^j <= B^T.
std::int64_t significance_limit(const Context& ctx) {
    std::int64_t j = radix_exponent_bound(ctx.out_base, ctx.base, ctx.digits);
    // bound gives minimal j with ob^j >= B^T; step down to the floor
    while (j > 0 && detail::cmp_pow(static_cast<std::uint64_t>(ctx.out_base), j,
                                    static_cast<std::uint64_t>(ctx.base), ctx.digits) > 0)
        --j;
    return j;
}

// Decimal exponent: |x| lies in [ob^(e10-1), ob^(e10)).
std::int64_t decimal_exponent(const Context& ctx, const MpFloat& x) {
    assert(!x.is_zero());
    const double lgb = std::log2(static_cast<double>(ctx.base));
    const double lgo = std::log2(static_cast<double>(ctx.out_base));
    double est = (static_cast<double>(x.exponent) * lgb) / lgo;
    std::int64_t e10 = static_cast<std::int64_t>(std::floor(est));
    // exact fix-up: find e10 with ob^(e10-1) <= |x| < ob^(e10); the estimate
    // is within a couple of units
    auto cmp_pow10 = [&](std::int64_t j) {
        // compare |x| with ob^j exactly: digits * B^(e-len)  vs  ob^j
        Vec lhs(x.digit.begin(), x.digit.end());
        Vec rhs{1};
        const std::int64_t be = x.exponent - static_cast<std::int64_t>(x.digit.size());
        if (be >= 0) detail::vec_mul_pow(lhs, ctx.base, be, ctx.base);
        else detail::vec_mul_pow(rhs, ctx.base, -be, ctx.base);
        if (j >= 0) detail::vec_mul_pow(rhs, ctx.out_base, j, ctx.base);
        else detail::vec_mul_pow(lhs, ctx.out_base, -j, ctx.base);
        return detail::vec_compare(lhs, rhs);
    };
    for (int fix = 0; fix < 8; ++fix) {
        if (cmp_pow10(e10) >= 0) {
            ++e10;
            continue;
        }
        if (cmp_pow10(e10 - 1) < 0) {
            --e10;
            continue;
        }
        return e10;
    }
    throw RangeError("decimal_exponent: estimate failed to settle");
}

} // namespace

std::string format_fixed(const Context& ctx, const MpFloat& x, std::int64_t width,
                         std::int64_t frac_places) {
    const std::int64_t p = width, nn = frac_places;
    if (nn < -1) throw WidthError("format_fixed: places below -1");
    const std::int64_t ipl = nn >= 0 ? p - nn - 2 : p - 1;
    if (ipl < 1 || p < 1 || p > 1 << 16) throw WidthError("format_fixed: bad field layout");

    std::string intpart = "0";
    std::string fracpart(static_cast<std::size_t>(std::max<std::int64_t>(nn, 0)), '0');
    int sign = x.sign;
    if (!x.is_zero()) {
        // early reject when the integer part clearly cannot fit
        const double lgb = std::log2(static_cast<double>(ctx.base));
        const double lgo = std::log2(static_cast<double>(ctx.out_base));
        if (x.exponent > 0 &&
            static_cast<double>(x.exponent) * lgb > (static_cast<double>(ipl) + 4) * lgo)
            throw WidthError("format_fixed: integer part overflows the field");

        Vec q = scaled_integer(ctx, x, std::max<std::int64_t>(nn, 0), format_dir(ctx));
        std::string all = to_obase_string(ctx, q);
        if (nn >= 0) {
            if (static_cast<std::int64_t>(all.size()) <= nn)
                all.insert(all.begin(), static_cast<std::size_t>(nn + 1) - all.size(), '0');
            intpart = all.substr(0, all.size() - static_cast<std::size_t>(nn));
            fracpart = all.substr(all.size() - static_cast<std::size_t>(nn));
        } else {
            intpart = all;
        }
        if (intpart == "0" && fracpart.find_first_not_of('0') == std::string::npos &&
            detail::vec_is_zero(q))
            sign = 0; // rounded away to zero

        // Blank out fraction digits beyond what T digits can make
        // significant: positions k > S - E10.
        if (nn > 0 && !detail::vec_is_zero(q)) {
            const std::int64_t e10 = static_cast<std::int64_t>(all.size()) -
                                     nn; // exponent of the rounded value
            const std::int64_t slim = significance_limit(ctx);
            std::int64_t first_blank = slim - e10; // last significant frac position
            if (first_blank < 0) first_blank = 0;
            for (std::int64_t kpos = first_blank; kpos < nn; ++kpos)
                fracpart[static_cast<std::size_t>(kpos)] = ' ';
        }
    }
    if (static_cast<std::int64_t>(intpart.size()) > ipl)
        throw WidthError("format_fixed: integer part does not fit");

    std::string out;
    out.push_back(sign < 0 ? '-' : ' ');
    out.append(static_cast<std::size_t>(ipl) - intpart.size(), ' ');
    out += intpart;
    if (nn >= 0) {
        out.push_back('.');
        out += fracpart;
    }
    assert(static_cast<std::int64_t>(out.size()) == p);
    return out;
}

std::string format_sci(const Context& ctx, const MpFloat& x, std::int64_t n_sig) {
    if (n_sig < 2) throw WidthError("format_sci: need at least 2 significant digits");
    const std::int64_t expw = ctx.exp_field_width - 2;
    if (expw < 1) throw WidthError("format_sci: exponent field too narrow");

    std::string digits;
    std::int64_t printed_exp = 0;
    if (x.is_zero()) {
        digits.assign(static_cast<std::size_t>(n_sig), '0');
    } else {
        std::int64_t e10 = decimal_exponent(ctx, x);
        // exponent field capacity check before any heavy scaling
        {
            std::int64_t cap = 1;
            for (std::int64_t i = 0; i < std::min<std::int64_t>(expw, 18); ++i)
                cap *= ctx.out_base;
            if (std::llabs(e10 - 1) >= cap && expw <= 18)
                throw WidthError("format_sci: exponent does not fit the field");
        }
        Vec q = scaled_integer(ctx, x, n_sig - e10, format_dir(ctx));
        digits = to_obase_string(ctx, q);
        if (static_cast<std::int64_t>(digits.size()) > n_sig) {
            // rounded up to the next power: 9.99 -> 10.0 means exponent + 1
            digits.pop_back(); // the extra digit is a zero
            e10 += 1;
        }
        if (static_cast<std::int64_t>(digits.size()) < n_sig)
            digits.insert(digits.begin(),
                          static_cast<std::size_t>(n_sig) - digits.size(), '0');
        printed_exp = e10 - 1;
    }

    std::string out;
    if (x.sign < 0) out.push_back('-');
    out.push_back(digits[0]);
    out.push_back('.');
    out += digits.substr(1);
    out.push_back(ctx.exp_char);
    out.push_back(printed_exp < 0 ? '-' : '+');
    // exponent rendered in out_base, zero padded to the field width
    std::string es;
    std::int64_t ev = std::llabs(printed_exp);
    if (ev == 0) es = "0";
    while (ev > 0) {
        es.push_back(digit_char(ev % ctx.out_base));
        ev /= ctx.out_base;
    }
    std::reverse(es.begin(), es.end());
    if (static_cast<std::int64_t>(es.size()) > expw)
        throw WidthError("format_sci: exponent does not fit the field");
    out.append(static_cast<std::size_t>(expw) - es.size(), '0');
    out += es;
    return out;
}

SciParts split_sci(const Context& ctx, const MpFloat& x) {
    SciParts r;
    if (x.is_zero()) return r;
    std::int64_t e10 = decimal_exponent(ctx, x);
    r.exp = e10 - 1;
    const std::int64_t cap = 4 * ctx.digits + 4096;
    if (std::llabs(r.exp) > cap) throw RangeError("split_sci: exponent too large to scale");
    // mantissa = x * ob^(1-e10), exactly scaled then rounded once
    Vec pw{1};
    detail::vec_mul_pow(pw, ctx.out_base, std::llabs(r.exp), ctx.base);
    MpFloat scalev;
    scalev.sign = +1;
    scalev.exponent = static_cast<std::int64_t>(pw.size());
    scalev.digit = std::move(pw);
    Dir dir = format_dir(ctx);
    if (r.exp >= 0) r.mantissa = detail::div_round(ctx, x, scalev, ctx.digits, dir);
    else r.mantissa = detail::mul_round(ctx, x, scalev, ctx.digits, dir);
    return r;
}

std::pair<std::int64_t, double> split_native(const Context& ctx, const MpFloat& x) {
    if (x.is_zero()) return {0, 0.0};
    SciParts s = split_sci(ctx, x);
    return {s.exp, to_native_float(ctx, s.mantissa)};
}

double to_native_float(const Context& ctx, const MpFloat& x) {
    if (x.is_zero()) return 0.0;
    long double f = 0;
    long double w = 1.0L / static_cast<long double>(ctx.base);
    const std::size_t take = std::min<std::size_t>(x.digit.size(), 40);
    for (std::size_t i = 0; i < take; ++i) {
        f += static_cast<long double>(x.digit[i]) * w;
        w /= static_cast<long double>(ctx.base);
    }
    long double v;
    double l2b = std::log2(static_cast<double>(ctx.base));
    if ((static_cast<double>(ctx.base) == std::exp2(std::round(l2b)))) {
        v = std::ldexp(f, static_cast<int>(x.exponent * static_cast<std::int64_t>(
                                                            std::llround(l2b))));
    } else {
        v = f * std::pow(static_cast<long double>(ctx.base),
                         static_cast<long double>(x.exponent));
    }
    return static_cast<double>(x.sign < 0 ? -v : v);
}

MpFloat from_native_float(const Context& ctx, double f) {
    if (f == 0.0) return mp_zero();
    if (!std::isfinite(f)) throw OutOfRange("from_native_float: not finite");
    int k = 0;
    double m = std::frexp(std::fabs(f), &k);
    // m in [0.5, 1): lift the full mantissa to an exact integer
    std::int64_t n53 = static_cast<std::int64_t>(std::ldexp(m, 53));
    MpFloat v = detail::int_exact(ctx, n53);
    std::int64_t e2 = k - 53;
    // exact scaling by 2^e2, then one nearest rounding
    if (e2 > 0) {
        Vec u = v.digit;
        detail::vec_mul_pow(u, 2, e2, ctx.base);
        v.digit = u;
        v.exponent = static_cast<std::int64_t>(u.size());
        return detail::normalize_round(ctx, detail::raw_from(v), ctx.digits, Dir::Nearest);
    }
    if (e2 < 0) {
        Vec pw{1};
        detail::vec_mul_pow(pw, 2, -e2, ctx.base);
        MpFloat den;
        den.sign = +1;
        den.exponent = static_cast<std::int64_t>(pw.size());
        den.digit = std::move(pw);
        MpFloat q = detail::div_round(ctx, v, den, ctx.digits, Dir::Nearest);
        if (f < 0) q.sign = -q.sign;
        return q;
    }
    MpFloat r = detail::normalize_round(ctx, detail::raw_from(v), ctx.digits, Dir::Nearest);
    if (f < 0) r.sign = -r.sign;
    return r;
}

MpFloat from_small_int(const Context& ctx, std::int64_t i) {
    if (i == 0) return mp_zero();
    MpFloat v = detail::int_exact(ctx, i);
    Dir dir = ctx.round_rule == Round::Truncate ? Dir::Chop
                                                : detail::dir_from_rule(ctx.round_rule);
    return detail::normalize_round(ctx, detail::raw_from(v), ctx.digits, dir);
}

// ---- binary records --------------------------------------------------------

namespace {

constexpr std::uint8_t record_version = 1;
constexpr std::uint8_t record_word_bytes = 8;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
    return v;
}

} // namespace

std::vector<std::uint8_t> serialize(const Context& ctx, const MpFloat& x) {
    PackedMp p = pack(ctx, x);
    std::vector<std::uint8_t> out;
    out.push_back(record_version);
    out.push_back(record_word_bytes);
    put_u64(out, static_cast<std::uint64_t>(ctx.base));
    put_u64(out, static_cast<std::uint64_t>(ctx.digits));
    for (auto w : p.word) put_u64(out, static_cast<std::uint64_t>(w));
    return out;
}

MpFloat deserialize(const Context& ctx, const std::vector<std::uint8_t>& record) {
    const std::size_t words = (static_cast<std::size_t>(ctx.digits) + 3) / 2;
    const std::size_t need = 2 + 16 + 8 * words;
    if (record.size() < 18) throw FormatError("deserialize: truncated header");
    if (record[0] != record_version) throw FormatError("deserialize: unknown version");
    if (record[1] != record_word_bytes) throw FormatError("deserialize: unknown word width");
    if (static_cast<std::int64_t>(get_u64(record, 2)) != ctx.base)
        throw FormatError("deserialize: base mismatch");
    if (static_cast<std::int64_t>(get_u64(record, 10)) != ctx.digits)
        throw FormatError("deserialize: digit count mismatch");
    if (record.size() < need) throw FormatError("deserialize: truncated record");
    PackedMp p;
    p.word.resize(words);
    for (std::size_t i = 0; i < words; ++i)
        p.word[i] = static_cast<std::int64_t>(get_u64(record, 18 + 8 * i));
    return unpack(ctx, p);
}

std::string debug_dump(const Context&, const MpFloat& x) {
    if (x.is_zero()) return "sign=0";
    std::string out = "sign=";
    out += x.sign > 0 ? "+1" : "-1";
    out += " exp=" + std::to_string(x.exponent) + " digits=[";
    for (std::size_t i = 0; i < x.digit.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(x.digit[i]);
    }
    out.push_back(']');
    return out;
}

} // namespace mp
