#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mp/arith.hpp"
#include "mp/context.hpp"
#include "mp/error.hpp"
#include "mp/number.hpp"
#include "oracle.hpp"

using namespace mp;

namespace {

Context make(std::int64_t base, std::int64_t digits, Round r = Round::Truncate) {
    Context c = init(10, 64);
    c = set_param(c, "BASE", base);
    c = set_param(c, "NUMDIG", digits);
    c = set_param(c, "RNDRL", static_cast<std::int64_t>(r));
    return c;
}

MpFloat dec(const Context& c, std::int64_t mantissa, std::int64_t scale_pow10) {
    // mantissa * 10^scale_pow10 built exactly through rationals
    std::int64_t num = mantissa, den = 1;
    for (std::int64_t i = 0; i < scale_pow10; ++i) num *= 10;
    for (std::int64_t i = 0; i > scale_pow10; --i) den *= 10;
    return from_rational(c, num, den);
}

} // namespace

TEST_CASE("severe cancellation is exact under Truncate") {
    Context c = make(10, 4);
    MpFloat r = sub(c, dec(c, 1000, -3), dec(c, 9999, -4));
    CHECK(oracle::to_rational(r, 10) == oracle::Rat(1, 10000));
}

TEST_CASE("x plus zero is x") {
    Context c = make(10, 4, Round::NearestEven);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        MpFloat x = oracle::random_value(c, rng, -8, 8, true);
        CHECK(oracle::same_value(add(c, x, mp_zero()), x));
        CHECK(oracle::same_value(add(c, mp_zero(), x), x));
    }
}

TEST_CASE("addition honours each rounding rule (worked example)") {
    // 0.123 + 0.00456 = 0.12756
    auto run = [](Round r) {
        Context c = make(10, 3, r);
        return add(c, dec(c, 123, -3), dec(c, 456, -5));
    };
    CHECK(oracle::to_rational(run(Round::Truncate), 10) == oracle::Rat(127, 1000));
    CHECK(oracle::to_rational(run(Round::NearestEven), 10) == oracle::Rat(128, 1000));
    CHECK(oracle::to_rational(run(Round::Up), 10) == oracle::Rat(128, 1000));
    CHECK(oracle::to_rational(run(Round::Down), 10) == oracle::Rat(127, 1000));
}

TEST_CASE("add_small and add_rational") {
    Context c = make(10, 4);
    CHECK(oracle::to_rational(add_small(c, mp_zero(), 1), 10) == 1);
    MpFloat third = add_rational(c, mp_zero(), Rational(1, 3));
    CHECK(oracle::to_rational(third, 10) == oracle::Rat(3333, 10000));
    MpFloat x = dec(c, 1234, -2);
    CHECK(oracle::same_value(add_rational(c, x, Rational(0, 5)), x));
    // far-apart scales only contribute a sticky tail
    Context cu = make(10, 4, Round::Up);
    MpFloat big = dec(cu, 1000, 10);
    MpFloat bumped = add_rational(cu, big, Rational(1, 7));
    CHECK(oracle::to_rational(bumped, 10) == oracle::to_rational(big, 10) + oracle::Rat(10000000000LL));
}

TEST_CASE("multiplication worked examples") {
    Context c = make(10, 3);
    MpFloat a = dec(c, 314, -2), b = dec(c, 272, -2);
    CHECK(oracle::to_rational(mul(c, a, b), 10) == oracle::Rat(854, 100));
    Context cup = make(10, 3, Round::Up);
    CHECK(oracle::to_rational(mul(cup, a, b), 10) == oracle::Rat(855, 100));
    CHECK(mul(c, a, mp_zero()).is_zero());
    Context cn = make(10, 3, Round::NearestEven);
    // 1.05 * 1.50 = 1.575, tie -> even last digit 1.58
    CHECK(oracle::to_rational(mul(cn, dec(cn, 105, -2), dec(cn, 150, -2)), 10) ==
          oracle::Rat(158, 100));
}

TEST_CASE("mul_small identity and rational multiply") {
    Context c = make(10, 4);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        MpFloat x = oracle::random_value(c, rng, -6, 6);
        CHECK(oracle::same_value(mul_small(c, x, 1), x));
    }
    CHECK(oracle::to_rational(mul_rational(c, mp_small(c, 1), Rational(2, 3)), 10) ==
          oracle::Rat(6666, 10000));
    CHECK(oracle::to_rational(scale(c, mp_small(c, 1), 10, 3), 10) == 1000);
}

TEST_CASE("division worked examples") {
    Context c = make(10, 4);
    CHECK(oracle::to_rational(div_small(c, mp_small(c, 1), 3), 10) == oracle::Rat(3333, 10000));
    Context cup = make(10, 4, Round::Up);
    CHECK(oracle::to_rational(div_small(cup, mp_small(cup, 1), 3), 10) ==
          oracle::Rat(3334, 10000));
    CHECK_THROWS_AS((void)div(c, mp_small(c, 1), mp_zero()), DivisionByZero);

    Context cn = make(10, 6, Round::NearestEven);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        MpFloat x = oracle::random_value(cn, rng, -5, 5);
        MpFloat one = div(cn, x, x);
        CHECK(oracle::to_rational(one, 10) == 1);
    }
}

TEST_CASE("newton reciprocal path agrees with long division") {
    Context big = make(10, 40, Round::Truncate); // above the crossover
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        MpFloat x = oracle::random_value(big, rng, -4, 4);
        MpFloat y = oracle::random_value(big, rng, -4, 4);
        MpFloat q_newton = div(big, x, y);
        oracle::Rat exact = oracle::to_rational(x, 10) / oracle::to_rational(y, 10);
        MpFloat want = oracle::round_reference(exact, 10, 40, oracle::Mode::Chop);
        CHECK(oracle::same_value(q_newton, want));
        MpFloat r_newton = recip(big, y);
        MpFloat r_want =
            oracle::round_reference(oracle::Rat(1) / oracle::to_rational(y, 10), 10, 40,
                                    oracle::Mode::Chop);
        CHECK(oracle::same_value(r_newton, r_want));
    }
}

TEST_CASE("exhaustive micro oracle: B in {2,3}, T = 2, all rules") {
    for (std::int64_t base : {2, 3}) {
        Context c0 = make(base, 2);
        auto values = oracle::all_values(c0, -2, 3, true);
        for (int rule = 0; rule < 4; ++rule) {
            Context c = set_param(c0, "RNDRL", rule);
            for (const MpFloat& x : values) {
                for (const MpFloat& y : values) {
                    oracle::Rat xv = oracle::to_rational(x, base);
                    oracle::Rat yv = oracle::to_rational(y, base);

                    MpFloat s = add(c, x, y);
                    oracle::Mode am = oracle::mode_for_rule(c.round_rule, x.sign * y.sign);
                    MpFloat swant = oracle::round_reference(xv + yv, base, 2, am);
                    if (!oracle::same_value(s, swant)) {
                        CAPTURE(base);
                        CAPTURE(rule);
                        CAPTURE(oracle::to_rational(x, base).convert_to<double>());
                        CAPTURE(oracle::to_rational(y, base).convert_to<double>());
                        REQUIRE(oracle::same_value(s, swant));
                    }

                    MpFloat p = mul(c, x, y);
                    MpFloat pwant =
                        oracle::round_reference(xv * yv, base, 2,
                                                oracle::mode_for_rule(c.round_rule));
                    REQUIRE(oracle::same_value(p, pwant));

                    if (!y.is_zero()) {
                        MpFloat q = div(c, x, y);
                        MpFloat qwant =
                            oracle::round_reference(xv / yv, base, 2,
                                                    oracle::mode_for_rule(c.round_rule));
                        if (!oracle::same_value(q, qwant)) {
                            CAPTURE(base);
                            CAPTURE(rule);
                            REQUIRE(oracle::same_value(q, qwant));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("commutativity is bitwise") {
    Context c = make(10, 5, Round::Truncate);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        MpFloat x = oracle::random_value(c, rng, -6, 6, true);
        MpFloat y = oracle::random_value(c, rng, -6, 6, true);
        CHECK(oracle::same_value(add(c, x, y), add(c, y, x)));
        CHECK(oracle::same_value(mul(c, x, y), mul(c, y, x)));
    }
}

TEST_CASE("comparisons") {
    Context c = make(10, 4);
    MpFloat x = from_rational(c, 1, 3); // 0.3333 truncated
    CHECK(compare(c, x, x) == 0);
    CHECK(compare_rational(c, x, 1, 3) == -1); // 0.3333 < 1/3
    CHECK(compare_magnitude(c, mp_small(c, -5), mp_small(c, 3)) == +1);
    CHECK(compare_small(c, mp_small(c, 7), 7) == 0);
    CHECK(lt(c, mp_small(c, 2), mp_small(c, 3)));
    CHECK(ge(c, mp_small(c, 3), mp_small(c, 3)));
    CHECK_THROWS_AS(compare_rational(c, x, 1, 0), ZeroDenominator);
    // order consistency with subtraction sign under Down
    Context cd = make(10, 4, Round::Down);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        MpFloat a = oracle::random_value(cd, rng, -4, 4, true);
        MpFloat b = oracle::random_value(cd, rng, -4, 4, true);
        int byCompare = compare(cd, a, b);
        int bySub = sub(cd, a, b).sign;
        CHECK(byCompare == bySub);
    }
}

TEST_CASE("selectors") {
    Context c = make(10, 4);
    MpFloat x = mp_small(c, -3);
    CHECK(oracle::same_value(negate(negate(x)), x));
    CHECK(sign_transfer(c, x, mp_zero()).is_zero());
    CHECK(oracle::to_rational(sign_transfer(c, x, mp_small(c, 2)), 10) == 3);
    CHECK(dim(c, mp_small(c, 2), mp_small(c, 5)).is_zero());
    CHECK(oracle::to_rational(dim(c, mp_small(c, 5), mp_small(c, 2)), 10) == 3);
    CHECK(oracle::to_rational(min_value(c, mp_small(c, 2), mp_small(c, 5)), 10) == 2);
    CHECK(oracle::to_rational(max_value(c, mp_small(c, 2), mp_small(c, 5)), 10) == 5);
}

TEST_CASE("integer parts") {
    Context c = make(10, 4);
    MpFloat x = dec(c, -275, -2); // -2.75
    CHECK(oracle::to_rational(frac_part(c, x), 10) == oracle::Rat(-75, 100));
    CHECK(oracle::to_rational(int_part(c, x), 10) == -2);
    MpFloat h = dec(c, -25, -1); // -2.5
    CHECK(oracle::to_rational(ceil(c, h), 10) == -2);
    CHECK(oracle::to_rational(floor(c, h), 10) == -3);
    CHECK(is_integer(c, mp_small(c, 3)));
    CHECK(!is_integer(c, dec(c, 35, -1)));
    CHECK(to_small_int(c, x) == -2);
    CHECK(to_small_int(c, mp_zero()) == 0);
    MpFloat huge = max_real(c);
    CHECK_THROWS_AS((void)to_small_int(c, huge), OutOfRange);
    CHECK(to_small_int_or_zero(c, huge) == 0);
}

TEST_CASE("modulo") {
    Context c = make(10, 4);
    CHECK(oracle::to_rational(modulo(c, mp_small(c, 7), mp_small(c, 3)), 10) == 1);
    CHECK(modulo(c, mp_small(c, 7), mp_zero()).is_zero());
    CHECK(oracle::to_rational(modulo(c, mp_small(c, -7), mp_small(c, 3)), 10) == -1);
    // fractional operands: 123.4 mod 2 = 1.4 (123.45 is not representable at T=4)
    MpFloat r = modulo(c, dec(c, 1234, -1), dec(c, 2, 0));
    CHECK(oracle::to_rational(r, 10) == oracle::Rat(14, 10));
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        MpFloat x = oracle::random_value(c, rng, -3, 6);
        MpFloat y = oracle::random_value(c, rng, -3, 6);
        oracle::Rat xv = oracle::to_rational(x, 10), yv = oracle::to_rational(y, 10);
        oracle::Rat qv = xv / yv;
        // cpp_int division truncates toward zero, matching int(x/y)
        oracle::Int qi =
            boost::multiprecision::numerator(qv) / boost::multiprecision::denominator(qv);
        oracle::Rat want = xv - yv * oracle::Rat(qi);
        CHECK(oracle::to_rational(modulo(c, x, y), 10) == want);
    }
}

TEST_CASE("gcd family") {
    Context c = make(10, 6);
    CHECK(gcd(c, mp_zero(), mp_zero()).is_zero());
    CHECK(oracle::to_rational(gcd(c, mp_small(c, 12), mp_small(c, 18)), 10) == 6);
    auto [a, b] = gcd_reduce(c, mp_small(c, 12), mp_small(c, 18));
    CHECK(oracle::to_rational(a, 10) == 2);
    CHECK(oracle::to_rational(b, 10) == 3);
    CHECK_THROWS_AS((void)gcd(c, from_rational(c, 1, 2), mp_small(c, 2)), NotAnInteger);
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::int64_t> d(-99999, 99999);
    for (int i = 0; i < 100; ++i) {
        std::int64_t xv = d(rng), yv = d(rng);
        MpFloat g = gcd(c, mp_small(c, xv), mp_small(c, yv));
        CHECK(oracle::to_rational(g, 10) == oracle::Rat(gcd_small(xv, yv)));
    }
}

TEST_CASE("complex multiply") {
    Context c = make(10, 6);
    auto [r1, i1] = complex_mul(c, mp_small(c, 1), mp_zero(), mp_zero(), mp_small(c, 1));
    CHECK(r1.is_zero());
    CHECK(oracle::to_rational(i1, 10) == 1);
    auto [r2, i2] =
        complex_mul(c, mp_small(c, 1), mp_small(c, 1), mp_small(c, 1), mp_small(c, -1));
    CHECK(oracle::to_rational(r2, 10) == 2);
    CHECK(i2.is_zero());
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        MpFloat a = oracle::random_value(c, rng, 0, 3);
        MpFloat b = oracle::random_value(c, rng, 0, 3);
        auto [rr, ri] = complex_mul(c, a, b, a, negate(b));
        // (a+bi)(a-bi) = a^2+b^2 exactly at this precision window
        oracle::Rat want =
            oracle::to_rational(a, 10) * oracle::to_rational(a, 10) +
            oracle::to_rational(b, 10) * oracle::to_rational(b, 10);
        MpFloat ref = oracle::round_reference(want, 10, 6, oracle::Mode::Chop);
        CHECK(ri.is_zero());
        // sums of two chopped squares: allow the last place to differ by one
        oracle::Rat got = oracle::to_rational(rr, 10);
        oracle::Rat refv = oracle::to_rational(ref, 10);
        oracle::Rat ulp = oracle::to_rational(ulp_of(c, rr), 10);
        CHECK(boost::multiprecision::abs(got - refv) <= 2 * ulp);
    }
}

TEST_CASE("randomized bracket property across bases") {
    std::mt19937_64 rng(41);
    for (std::int64_t base : {2, 10, 64}) {
        Context c0 = make(base, 3);
        for (int i = 0; i < 400; ++i) {
            MpFloat x = oracle::random_value(c0, rng, -6, 6);
            MpFloat y = oracle::random_value(c0, rng, -6, 6);
            oracle::Rat exact[3];
            exact[0] = oracle::to_rational(x, base) + oracle::to_rational(y, base);
            exact[1] = oracle::to_rational(x, base) * oracle::to_rational(y, base);
            exact[2] = oracle::to_rational(x, base) / oracle::to_rational(y, base);
            for (int op = 0; op < 3; ++op) {
                Context cd = set_param(c0, "RNDRL", 2);
                Context cu = set_param(c0, "RNDRL", 3);
                MpFloat lo, hi;
                switch (op) {
                case 0:
                    lo = add(cd, x, y);
                    hi = add(cu, x, y);
                    break;
                case 1:
                    lo = mul(cd, x, y);
                    hi = mul(cu, x, y);
                    break;
                default:
                    lo = div(cd, x, y);
                    hi = div(cu, x, y);
                }
                CHECK(oracle::to_rational(lo, base) <= exact[op]);
                CHECK(oracle::to_rational(hi, base) >= exact[op]);
            }
        }
    }
}
