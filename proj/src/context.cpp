#include "mp/context.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "mp/arith.hpp"
#include "mp/detail/bigpow.hpp"
#include "mp/error.hpp"
#include "mp/number.hpp"

namespace mp {

namespace {

std::int64_t max_int_for(int word_bits) {
    if (word_bits < 12 || word_bits > 64)
        throw ConfigError("word_bits must be in [12, 64]");
    if (word_bits == 64) return std::numeric_limits<std::int64_t>::max();
    return (std::int64_t{1} << (word_bits - 1)) - 1;
}

bool base_fits(std::int64_t b, std::int64_t mxint) {
    // 8*b^2 - 1 <= mxint without overflowing the check itself
    return static_cast<__int128>(8) * b * b - 1 <= static_cast<__int128>(mxint);
}

} // namespace

Context Context::with_digits(std::int64_t t) const {
    Context c = *this;
    c.digits = t;
    c.underflow_count = 0;
    c.exp_seen_max = -c.max_exp;
    c.exp_seen_min = c.max_exp + 1;
    return c;
}

void validate(const Context& ctx) {
    if (ctx.base < 2) throw ConfigError("BASE must be at least 2");
    if (!base_fits(ctx.base, ctx.max_int))
        throw ConfigError("8*BASE^2-1 must be representable (MXINT too small)");
    if (ctx.digits < 2) throw ConfigError("NUMDIG must be at least 2");
    if (ctx.max_exp <= ctx.digits) throw ConfigError("MAXEXP must exceed NUMDIG");
    if (ctx.max_exp > ctx.max_int / 4) throw ConfigError("4*MAXEXP must not exceed MXINT");
    if (ctx.in_base < 2 || ctx.in_base > 16) throw ConfigError("INBASE must be in [2, 16]");
    if (ctx.out_base < 2 || ctx.out_base > 16) throw ConfigError("OUTBAS must be in [2, 16]");
    if (ctx.exp_field_width < 3) throw ConfigError("EXWID must be at least 3");
    if (ctx.in_record_len < 1 || ctx.in_record_len > 80)
        throw ConfigError("INRECL must be in [1, 80]");
    if (ctx.max_underflows < 0) throw ConfigError("MXUNFL must be >= 0");
    char c = ctx.exp_char;
    if (c == ' ' || c == '+' || c == '-')
        throw ConfigError("EXPCH must not be a digit, sign or blank");
    int dv = -1;
    if (c >= '0' && c <= '9') dv = c - '0';
    else if (c >= 'A' && c <= 'F') dv = 10 + (c - 'A');
    else if (c >= 'a' && c <= 'f') dv = 10 + (c - 'a');
    const std::int64_t widest = ctx.in_base > ctx.out_base ? ctx.in_base : ctx.out_base;
    if (dv >= 0 && dv < widest)
        throw ConfigError("EXPCH must not be a digit in the current I/O bases");
}

Context init(std::int64_t decimal_places, int word_bits) {
    if (decimal_places < 1) throw ConfigError("decimal_places must be >= 1");
    Context ctx;
    ctx.word_bits = word_bits;
    ctx.max_int = max_int_for(word_bits);

    std::int64_t b = 2;
    if (!base_fits(b, ctx.max_int)) throw ConfigError("no base >= 2 fits this word length");
    while (base_fits(2 * b, ctx.max_int)) b *= 2;
    ctx.base = b;

    // Minimal T >= 2 with B^(T-1) >= 10^(decimal_places-1). Estimate with
    // doubles, then settle the boundary exactly.
    const std::int64_t want = decimal_places - 1;
    double est = static_cast<double>(want) * std::log(10.0) / std::log(static_cast<double>(b));
    std::int64_t t1 = static_cast<std::int64_t>(est) - 2;
    if (t1 < 1) t1 = 1;
    if (decimal_places > 100000) {
        // Too big to verify exactly; trust the estimate with a safety digit.
        t1 = static_cast<std::int64_t>(std::ceil(est)) + 1;
    } else {
        while (detail::cmp_pow(static_cast<std::uint64_t>(b), t1, 10, want) < 0) ++t1;
    }
    ctx.digits = t1 + 1 < 2 ? 2 : t1 + 1;

    ctx.max_exp = ctx.max_int / 4;
    ctx.round_rule = Round::Truncate;
    ctx.decimal_places = decimal_places;
    ctx.underflow_count = 0;
    ctx.exp_seen_max = -ctx.max_exp;
    ctx.exp_seen_min = ctx.max_exp + 1;
    validate(ctx);
    return ctx;
}

namespace {

std::string key3(std::string_view name) {
    std::string k;
    for (char c : name) {
        if (k.size() == 3) break;
        k.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return k;
}

} // namespace

Context set_param(const Context& ctx, std::string_view name, std::int64_t value) {
    Context c = ctx;
    const std::string k = key3(name);
    if (k == "BAS") c.base = value;
    else if (k == "NUM") c.digits = value;
    else if (k == "MAX") c.max_exp = value;
    else if (k == "RND") {
        if (value < 0 || value > 3) throw ConfigError("RNDRL must be in 0..3");
        c.round_rule = static_cast<Round>(value);
    } else if (k == "KTU") c.underflow_count = value;
    else if (k == "MXU") c.max_underflows = value;
    else if (k == "MXE") c.exp_seen_max = value;
    else if (k == "MNE") c.exp_seen_min = value;
    else if (k == "MXI") c.max_int = value;
    else if (k == "DEC") c.decimal_places = value;
    else if (k == "EXW") c.exp_field_width = value;
    else if (k == "INR") c.in_record_len = value;
    else if (k == "INB") c.in_base = value;
    else if (k == "OUT") c.out_base = value;
    else if (k == "EXP") c.exp_char = static_cast<char>(value);
    else throw ConfigError("unknown parameter name: " + std::string(name));
    validate(c);
    return c;
}

std::int64_t get_param(const Context& ctx, std::string_view name) {
    const std::string k = key3(name);
    if (k == "BAS") return ctx.base;
    if (k == "NUM") return ctx.digits;
    if (k == "MAX") return ctx.max_exp;
    if (k == "RND") return static_cast<std::int64_t>(ctx.round_rule);
    if (k == "KTU") return ctx.underflow_count;
    if (k == "MXU") return ctx.max_underflows;
    if (k == "MXE") return ctx.exp_seen_max;
    if (k == "MNE") return ctx.exp_seen_min;
    if (k == "MXI") return ctx.max_int;
    if (k == "DEC") return ctx.decimal_places;
    if (k == "EXW") return ctx.exp_field_width;
    if (k == "INR") return ctx.in_record_len;
    if (k == "INB") return ctx.in_base;
    if (k == "OUT") return ctx.out_base;
    if (k == "EXP") return static_cast<std::int64_t>(ctx.exp_char);
    throw ConfigError("unknown parameter name: " + std::string(name));
}

MpFloat epsilon(const Context& ctx) {
    MpFloat q;
    switch (ctx.round_rule) {
    case Round::Truncate: {
        Context up = ctx;
        up.round_rule = Round::Up;
        q = from_rational(up, 101, 100);
        break;
    }
    case Round::NearestEven: {
        Context up = ctx;
        up.round_rule = Round::Up;
        q = from_rational(up, 1, 2);
        break;
    }
    default: { // Down/Up: exactly B^(1-T)
        MpFloat r;
        r.sign = +1;
        r.exponent = 2 - ctx.digits;
        r.digit.assign(static_cast<std::size_t>(ctx.digits), 0);
        r.digit[0] = 1;
        return r;
    }
    }
    q.exponent += 1 - ctx.digits;
    return q;
}

MpFloat max_real(const Context& ctx) {
    MpFloat r;
    r.sign = +1;
    r.exponent = ctx.max_exp;
    r.digit.assign(static_cast<std::size_t>(ctx.digits), ctx.base - 1);
    return r;
}

MpFloat min_real(const Context& ctx) {
    MpFloat r;
    r.sign = +1;
    r.exponent = 1 - ctx.max_exp;
    r.digit.assign(static_cast<std::size_t>(ctx.digits), 0);
    r.digit[0] = 1;
    return r;
}

} // namespace mp
