#pragma once

#include <cstdint>
#include <vector>

#include "mp/context.hpp"

namespace mp {

// A normalized multiple-precision float: value = sign * B^exponent * f where
// f = sum digit[i] * B^(-1-i) and digit[0] >= 1, so f is in [1/B, 1).
// When sign == 0 the exponent and digits carry no meaning.
struct MpFloat {
    int sign = 0; // -1, 0, +1
    std::int64_t exponent = 0;
    std::vector<std::int64_t> digit;

    bool is_zero() const { return sign == 0; }
};

// Compact storage form: word[0] holds the leading digit pair p*B+q with the
// sign attached, word[1] the exponent, the remaining words further digit
// pairs. Zero is a zero first word. A nonzero packed value always has
// |word[0]| > 1, which is how packed and unpacked forms are told apart.
struct PackedMp {
    std::vector<std::int64_t> word;

    bool is_zero() const { return word.empty() || word[0] == 0; }
};

PackedMp pack(const Context& ctx, const MpFloat& x);
MpFloat unpack(const Context& ctx, const PackedMp& p);

// Re-sizes x (with tx digits) to target_digits, padding with zeros when
// growing and rounding per ctx.round_rule when shrinking.
MpFloat move_precision(const Context& ctx, const MpFloat& x, std::int64_t target_digits);

// Field accessors. exponent_of returns the -M sentinel for zero.
int sign_of(const MpFloat& x);
int sign_of(const PackedMp& p);
std::int64_t exponent_of(const Context& ctx, const MpFloat& x);
std::int64_t digit_at(const Context& ctx, const MpFloat& x, std::int64_t n); // n in [1, T]

// Field setters; results must stay valid numbers. Setting the sign of a
// nonzero value to 0 zeroes it. Setting an out-of-range exponent triggers
// the overflow/underflow policy.
MpFloat with_sign(const Context& ctx, const MpFloat& x, int sign);
MpFloat with_exponent(const Context& ctx, const MpFloat& x, std::int64_t e);
MpFloat with_digit(const Context& ctx, const MpFloat& x, std::int64_t n, std::int64_t value);

// Overflow policy: saturate to +-max_real and record exp_seen_max = M+1.
MpFloat overflow_result(const Context& ctx, int sign);

// Underflow policy for a result whose exponent fell below 1-M: counts the
// event (throwing UnderflowLimit once max_underflows is hit), then returns
// zero under Truncate/NearestEven, -B^(-M) under Down, +B^(-M) under Up.
MpFloat underflow_result(const Context& ctx);

// Convenience constructors.
MpFloat mp_zero();
MpFloat mp_small(const Context& ctx, std::int64_t value); // exact; |value| < B^T required

// One unit in the last place of x: B^(exponent-T). Zero for x == 0.
MpFloat ulp_of(const Context& ctx, const MpFloat& x);

} // namespace mp
