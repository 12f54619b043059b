#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mp/arith.hpp"
#include "mp/context.hpp"
#include "mp/detail/kernel.hpp"
#include "mp/error.hpp"
#include "mp/number.hpp"
#include "oracle.hpp"

using namespace mp;
using detail::Dir;
using detail::RawMp;

namespace {

Context decimal(std::int64_t digits, Round r = Round::Truncate) {
    Context c = init(10, 64);
    c = set_param(c, "BASE", 10);
    c = set_param(c, "NUMDIG", digits);
    c = set_param(c, "RNDRL", static_cast<std::int64_t>(r));
    return c;
}

RawMp raw(int sign, std::int64_t exp, std::vector<std::int64_t> dig) {
    RawMp u;
    u.sign = sign;
    u.exp = exp;
    u.dig = std::move(dig);
    return u;
}

} // namespace

TEST_CASE("normalize shifts out leading zeros") {
    Context c = decimal(3);
    MpFloat r = detail::normalize_round(c, raw(+1, 1, {0, 1, 2, 3}), 3, Dir::Chop);
    CHECK(r.sign == 1);
    CHECK(r.exponent == 0);
    CHECK(r.digit == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("nearest-even uses guard digits and tie-to-even") {
    Context c = decimal(3);
    MpFloat a = detail::normalize_round(c, raw(+1, 0, {1, 2, 3, 5}), 3, Dir::Nearest);
    CHECK(a.digit == std::vector<std::int64_t>{1, 2, 4});
    MpFloat b = detail::normalize_round(c, raw(+1, 0, {1, 2, 2, 5}), 3, Dir::Nearest);
    CHECK(b.digit == std::vector<std::int64_t>{1, 2, 2});
}

TEST_CASE("directed rounding respects the sign") {
    Context c = decimal(3);
    MpFloat dn = detail::normalize_round(c, raw(-1, 0, {1, 2, 3, 1}), 3, Dir::Down);
    CHECK(dn.sign == -1);
    CHECK(dn.digit == std::vector<std::int64_t>{1, 2, 4});
    MpFloat up = detail::normalize_round(c, raw(-1, 0, {1, 2, 3, 1}), 3, Dir::Up);
    CHECK(up.digit == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("rounding against the exhaustive 4-digit enumeration") {
    // Every 4-digit fraction rounded to 3 digits, all modes, both signs,
    // checked against the big-rational reference.
    Context c = decimal(3);
    for (int sign : {+1, -1}) {
        for (std::int64_t m = 1000; m <= 9999; ++m) {
            std::vector<std::int64_t> dig{m / 1000, (m / 100) % 10, (m / 10) % 10, m % 10};
            oracle::Rat v = oracle::Rat(sign * m, 10000);
            for (auto [dir, mode] : {std::pair{Dir::Chop, oracle::Mode::Chop},
                                     {Dir::Away, oracle::Mode::Away},
                                     {Dir::Nearest, oracle::Mode::Nearest},
                                     {Dir::Down, oracle::Mode::Down},
                                     {Dir::Up, oracle::Mode::Up}}) {
                MpFloat got = detail::normalize_round(c, raw(sign, 0, dig), 3, dir);
                MpFloat want = oracle::round_reference(v, 10, 3, mode);
                if (!oracle::same_value(got, want)) {
                    CAPTURE(sign);
                    CAPTURE(m);
                    CAPTURE(static_cast<int>(dir));
                    REQUIRE(oracle::same_value(got, want));
                }
            }
        }
    }
}

TEST_CASE("normalization of an already-normalized value is the identity") {
    Context c = decimal(5);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        MpFloat x = oracle::random_value(c, rng, -5, 5);
        MpFloat y = detail::normalize_round(c, detail::raw_from(x), 5, Dir::Nearest);
        CHECK(oracle::same_value(x, y));
    }
}

TEST_CASE("pack layout and round trip") {
    Context c = decimal(5);
    MpFloat x;
    x.sign = +1;
    x.exponent = 2;
    x.digit = {1, 2, 3, 4, 5};
    PackedMp p = pack(c, x);
    CHECK(p.word == std::vector<std::int64_t>{12, 2, 34, 50});
    MpFloat negx = negate(x);
    CHECK(pack(c, negx).word[0] == -12);
    CHECK(pack(c, mp_zero()).word[0] == 0);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        MpFloat v = oracle::random_value(c, rng, -30, 30, true);
        MpFloat rt = unpack(c, pack(c, v));
        CHECK(oracle::same_value(v, rt));
        if (!v.is_zero()) CHECK(std::abs(pack(c, v).word[0]) > 1);
    }
}

TEST_CASE("move_precision pads exactly and rounds per rule") {
    Context c = decimal(4);
    MpFloat x = from_rational(set_param(c, "NUMDIG", 2), 12, 10); // 0.12e1 at T=2
    MpFloat wide = move_precision(c, x, 4);
    CHECK(wide.digit == std::vector<std::int64_t>{1, 2, 0, 0});

    MpFloat y = from_rational(c, 1239, 1000); // 0.1239e1 at T=4
    Context c3 = set_param(c, "NUMDIG", 3);
    CHECK(move_precision(c3, y, 3).digit == std::vector<std::int64_t>{1, 2, 3});
    Context c3up = set_param(c3, "RNDRL", 3);
    CHECK(move_precision(c3up, y, 3).digit == std::vector<std::int64_t>{1, 2, 4});
}

TEST_CASE("field accessors and setters") {
    Context c = decimal(3);
    CHECK(sign_of(mp_zero()) == 0);
    MpFloat x = from_rational(c, 375, 100); // 3.75
    CHECK(digit_at(c, x, 2) == 7);
    CHECK(exponent_of(c, x) == 1);
    CHECK(exponent_of(c, mp_zero()) == -c.max_exp);
    CHECK_THROWS_AS(digit_at(c, x, 4), RangeError);
    CHECK_THROWS_AS(with_digit(c, x, 1, 0), RangeError);

    // setting exponent beyond M triggers the overflow policy
    Context cm = set_param(c, "MAXEXP", 50);
    MpFloat sat = with_exponent(cm, x, 51);
    CHECK(oracle::same_value(sat, max_real(cm)));
    CHECK(cm.overflow_seen());
}

TEST_CASE("underflow policy per rule with counter and limit") {
    Context c = decimal(3);
    c = set_param(c, "MAXEXP", 50);

    MpFloat z = underflow_result(c);
    CHECK(z.is_zero());
    CHECK(c.underflow_count == 1);

    Context cdn = set_param(c, "RNDRL", 2);
    MpFloat dn = underflow_result(cdn);
    CHECK(dn.sign == -1);
    CHECK(oracle::same_value(abs_value(dn), min_real(cdn)));

    Context cup = set_param(c, "RNDRL", 3);
    MpFloat up = underflow_result(cup);
    CHECK(oracle::same_value(up, min_real(cup)));

    Context lim = set_param(set_param(c, "MXUNFL", 2), "KTUNFL", 0);
    (void)underflow_result(lim);
    CHECK_THROWS_AS((void)underflow_result(lim), UnderflowLimit);
}

TEST_CASE("arithmetic triggers the policies at the exponent rim") {
    Context c = decimal(3, Round::Truncate);
    c = set_param(c, "MAXEXP", 50);
    MpFloat mx = max_real(c);
    MpFloat sat = mul(c, mx, mx);
    CHECK(oracle::same_value(sat, mx));
    CHECK(c.overflow_seen());
    CHECK(get_param(c, "MXEXPN") == 51);

    MpFloat mn = min_real(c);
    MpFloat z = mul(c, mn, mn);
    CHECK(z.is_zero());
    CHECK(c.underflow_count == 1);
}
