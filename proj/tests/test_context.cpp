#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mp/arith.hpp"
#include "mp/context.hpp"
#include "mp/error.hpp"
#include "mp/number.hpp"

using namespace mp;

namespace {

Context decimal(std::int64_t digits, Round r = Round::Truncate) {
    Context c = init(10, 64);
    c = set_param(c, "BASE", 10);
    c = set_param(c, "NUMDIG", digits);
    c = set_param(c, "RNDRL", static_cast<std::int64_t>(r));
    return c;
}

} // namespace

TEST_CASE("init picks maximal power-of-two base and minimal digits") {
    Context c16 = init(43, 16);
    CHECK(c16.base == 64);
    CHECK(c16.digits == 25);
    CHECK(c16.max_int == 32767);
    CHECK(c16.max_exp == 32767 / 4);

    Context tiny = init(1, 16);
    CHECK(tiny.digits == 2);

    Context c36 = init(40, 36);
    CHECK(c36.base == 65536);
    CHECK(c36.digits == 10);
}

TEST_CASE("init is deterministic and satisfies the precision inequality") {
    for (auto [d, w] : {std::pair<int, int>{7, 16}, {40, 32}, {100, 64}, {1, 12}}) {
        Context a = init(d, w);
        Context b = init(d, w);
        CHECK(a.base == b.base);
        CHECK(a.digits == b.digits);
        // B^(T-1) >= 10^(d-1), checked in exact integer arithmetic
        __int128 lhs = 1;
        bool ge = false;
        for (int i = 0; i < a.digits - 1; ++i) {
            lhs *= a.base;
            __int128 rhs = 1;
            bool overflow = false;
            for (int j = 0; j < d - 1; ++j) {
                rhs *= 10;
                if (rhs > (static_cast<__int128>(1) << 120)) {
                    overflow = true;
                    break;
                }
            }
            if (!overflow && lhs >= rhs) ge = true;
        }
        if (d == 1) ge = true; // 10^0: any base works
        CHECK(ge);
    }
}

TEST_CASE("set_param matches on first three characters, case-insensitive") {
    Context c = decimal(20, Round::NearestEven);
    CHECK(c.digits == 20);
    CHECK(c.base == 10);
    CHECK(c.round_rule == Round::NearestEven);
    CHECK(get_param(init(43, 16), "BASE") == 64);
    CHECK(get_param(c, "numdig") == 20);
    CHECK(get_param(c, "OUTBAS") == 10);
    CHECK_THROWS_AS(set_param(c, "BASE", 1), ConfigError);
    CHECK_THROWS_AS(set_param(c, "RNDRL", 7), ConfigError);
    CHECK_THROWS_AS(set_param(c, "MAXEXP", 5), ConfigError); // must exceed T
    CHECK_THROWS_AS(set_param(c, "NOSUCH", 1), ConfigError);
    // ctx unchanged on error
    CHECK_THROWS_AS(set_param(c, "INBASE", 17), ConfigError);
    CHECK(c.in_base == 10);
}

TEST_CASE("epsilon formulas for all four rules") {
    auto digits_of = [](const MpFloat& x) { return x.digit; };
    for (std::int64_t t : {3, 5}) {
        Context c = decimal(t);
        // Truncate: 1.01 * 10^(1-t) rounded up
        MpFloat e0 = epsilon(c);
        CHECK(e0.exponent == 2 - t);
        CHECK(digits_of(e0)[0] == 1);
        CHECK(digits_of(e0)[1] == 0);
        CHECK(digits_of(e0)[2] == 1);

        Context c1 = set_param(c, "RNDRL", 1);
        MpFloat e1 = epsilon(c1);
        CHECK(e1.exponent == 1 - t);
        CHECK(digits_of(e1)[0] == 5);

        for (int r : {2, 3}) {
            Context cr = set_param(c, "RNDRL", r);
            MpFloat er = epsilon(cr);
            CHECK(er.exponent == 2 - t);
            CHECK(digits_of(er)[0] == 1);
            for (std::size_t i = 1; i < er.digit.size(); ++i) CHECK(er.digit[i] == 0);
        }
    }
}

TEST_CASE("max_real and min_real") {
    Context c = decimal(3);
    c = set_param(c, "MAXEXP", 50);
    MpFloat mx = max_real(c);
    CHECK(mx.exponent == 50);
    CHECK(mx.digit == std::vector<std::int64_t>{9, 9, 9});
    MpFloat mn = min_real(c);
    CHECK(mn.exponent == -49); // 10^-50 = 0.1 * 10^-49
    CHECK(mn.digit == std::vector<std::int64_t>{1, 0, 0});

    Context c2 = init(10, 16);
    c2 = set_param(c2, "BASE", 2);
    c2 = set_param(c2, "NUMDIG", 2);
    c2 = set_param(c2, "MAXEXP", 10);
    MpFloat m2 = max_real(c2);
    // 0.11_2 * 2^10 = 768
    CHECK(to_small_int(c2, m2) == 768);
}

TEST_CASE("every nonzero normalized value lies in [min_real, max_real]") {
    Context c = decimal(4);
    MpFloat mn = min_real(c);
    MpFloat mx = max_real(c);
    MpFloat x = from_rational(c, 355, 113);
    CHECK(compare(c, abs_value(x), mn) >= 0);
    CHECK(compare(c, abs_value(x), mx) <= 0);
}
