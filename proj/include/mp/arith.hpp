#pragma once

#include <cstdint>
#include <utility>

#include "mp/context.hpp"
#include "mp/number.hpp"

namespace mp {

// Small rational i/j with |i|, |j| bounded by the word budget. Stored
// reduced, denominator positive.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d); // throws ZeroDenominator
};

// ---- basic arithmetic ----------------------------------------------------
//
// Under Truncate, add/sub chop towards zero when the operands agree in sign
// and round away from zero when they cancel (one-guard-digit semantics, so
// severe cancellation is exact). All other rules give the best possible
// rounding of the exact result.
MpFloat add(const Context& ctx, const MpFloat& x, const MpFloat& y);
MpFloat sub(const Context& ctx, const MpFloat& x, const MpFloat& y);
MpFloat add_small(const Context& ctx, const MpFloat& x, std::int64_t i);
MpFloat add_rational(const Context& ctx, const MpFloat& x, const Rational& q);

// Product with at least two guard digits; truncation error < 1.01 ulp,
// nearest <= 0.5 ulp, directed < 1 ulp. Zero digits of x are skipped.
MpFloat mul(const Context& ctx, const MpFloat& x, const MpFloat& y);
MpFloat mul_small(const Context& ctx, const MpFloat& x, std::int64_t i); // O(T)
MpFloat mul_rational(const Context& ctx, const MpFloat& x, const Rational& q);

// x * n^j for 1 < n <= 100; splits into repeated rational multiplies when
// n^j does not fit a word. Directed roundings give correct bounds.
MpFloat scale(const Context& ctx, const MpFloat& x, std::int64_t n, std::int64_t j);

MpFloat div(const Context& ctx, const MpFloat& x, const MpFloat& y);
MpFloat div_small(const Context& ctx, const MpFloat& x, std::int64_t i); // O(T)
MpFloat recip(const Context& ctx, const MpFloat& x);

// Exact conversion of a rational to T digits under the current rule.
MpFloat from_rational(const Context& ctx, std::int64_t i, std::int64_t j);

// ---- comparison (always exact) -------------------------------------------
int compare(const Context& ctx, const MpFloat& x, const MpFloat& y);
int compare_small(const Context& ctx, const MpFloat& x, std::int64_t i);
// Compares x with i/j without ever forming the quotient.
int compare_rational(const Context& ctx, const MpFloat& x, std::int64_t i, std::int64_t j);
int compare_magnitude(const Context& ctx, const MpFloat& x, const MpFloat& y);

bool eq(const Context& ctx, const MpFloat& x, const MpFloat& y);
bool ne(const Context& ctx, const MpFloat& x, const MpFloat& y);
bool lt(const Context& ctx, const MpFloat& x, const MpFloat& y);
bool le(const Context& ctx, const MpFloat& x, const MpFloat& y);
bool gt(const Context& ctx, const MpFloat& x, const MpFloat& y);
bool ge(const Context& ctx, const MpFloat& x, const MpFloat& y);

// ---- exact selectors -------------------------------------------------
MpFloat abs_value(const MpFloat& x);
MpFloat negate(const MpFloat& x);
// |x| * sign(y); zero when y is zero.
MpFloat sign_transfer(const Context& ctx, const MpFloat& x, const MpFloat& y);
MpFloat min_value(const Context& ctx, const MpFloat& x, const MpFloat& y);
MpFloat max_value(const Context& ctx, const MpFloat& x, const MpFloat& y);
// max(0, x - y); rounds like sub.
MpFloat dim(const Context& ctx, const MpFloat& x, const MpFloat& y);

// ---- integer parts (exact) ----------------------------------------------
MpFloat frac_part(const Context& ctx, const MpFloat& x);  // x - int(x), trunc to 0
MpFloat int_part(const Context& ctx, const MpFloat& x);   // trunc toward 0
MpFloat ceil(const Context& ctx, const MpFloat& x);
MpFloat floor(const Context& ctx, const MpFloat& x);
bool is_integer(const Context& ctx, const MpFloat& x);

// Truncated conversion to a word; throws OutOfRange beyond max_int.
std::int64_t to_small_int(const Context& ctx, const MpFloat& x);
// Legacy-style variant returning 0 when out of range.
std::int64_t to_small_int_or_zero(const Context& ctx, const MpFloat& x);

// x - y*int(x/y), exact; returns zero when y is zero (by convention).
MpFloat modulo(const Context& ctx, const MpFloat& x, const MpFloat& y);

// Euclidean gcd of integer-valued arguments with |x|, |y| < B^T.
MpFloat gcd(const Context& ctx, const MpFloat& x, const MpFloat& y);
std::pair<MpFloat, MpFloat> gcd_reduce(const Context& ctx, const MpFloat& x, const MpFloat& y);

// (zr + i zi) = (xr + i xi) * (yr + i yi), plain arithmetic, no guard digits.
std::pair<MpFloat, MpFloat> complex_mul(const Context& ctx, const MpFloat& xr,
                                        const MpFloat& xi, const MpFloat& yr,
                                        const MpFloat& yi);

// Word-sized gcd helper (also used to reduce Rational).
std::int64_t gcd_small(std::int64_t a, std::int64_t b);

} // namespace mp
