#pragma once

#include <cstdint>
#include <vector>

#include "mp/context.hpp"
#include "mp/number.hpp"

// Internal normalization/rounding kernel shared by the arithmetic and
// function modules. Nothing in this header is part of the public contract.

namespace mp::detail {

inline constexpr int tail_half_unset = 9;

// Exact information about the value lying strictly beyond the digits of a
// RawMp, measured in units of the last held digit position:
//   sign  0 = nothing there, +1 = a value in (0, 1) units
//   half  comparison of that value with 1/2 unit (-1/0/+1) when the caller
//         knows it exactly; tail_half_unset means "not known" and is only
//         acceptable for callers with their own error budget (the guarded
//         elementary-function paths), never for the basic operations.
struct Tail {
    int sign = 0;
    int half = tail_half_unset;
};

// Unnormalized working form: separate sign and exponent, digit values that
// may exceed B-1 or be negative before carry propagation, any number of
// guard digits, and an exact tail marker. digit[i] has weight B^(exp-1-i).
struct RawMp {
    int sign = 0;
    std::int64_t exp = 0;
    std::vector<std::int64_t> dig;
    Tail tail;
};

// How to resolve the discarded part. Down/Up are mapped onto Chop/Away by
// the sign of the value inside the kernel.
enum class Dir { Chop, Away, Nearest, Down, Up };

Dir dir_from_rule(Round r);

// MPADD's truncation rule: chop when the operands agree in sign, round away
// from zero when they cancel.
Dir add_truncate_dir(int sign_x, int sign_y);

RawMp raw_from(const MpFloat& x);

// Propagates carries/borrows so every digit lands in [0, B). May grow the
// vector at the front (exponent increases).
void carry_fix(RawMp& u, std::int64_t base);

// Normalizes, rounds to t_out digits per dir, applies the overflow and
// underflow policies, and updates the context exponent telemetry.
MpFloat normalize_round(const Context& ctx, RawMp u, std::int64_t t_out, Dir dir);

// Final rounding step for guarded computations: x carries more digits than
// ctx.digits and approximates the true value within slack_ulp units of the
// *final* last place. Rules 0/1 round to nearest; rules 2/3 first move the
// value slack_ulp last places in the rounding direction so the result is a
// true bound.
MpFloat final_round(const Context& ctx, const MpFloat& x, int slack_ulp);

// Same, but the error bound is absolute: slack_ulp units of B^(-t) rather
// than of the result's own last place (the cos/sin contract).
MpFloat final_round_abs(const Context& ctx, const MpFloat& x, int slack_ulp);

// Minimal g >= 0 with B^g >= |n| (MPGD): guard digits needed to absorb an
// error of n units.
std::int64_t guard_digits_for(std::int64_t base, std::int64_t n);

// Working precision for a computation that can lose about loss_units ulps:
// T + 1 + guard_digits_for(100 * loss_units).
std::int64_t guarded_digits(const Context& ctx, std::int64_t loss_units);

// Exact three-way comparison of |x| and |y| (normalized inputs).
int compare_mag(const MpFloat& x, const MpFloat& y);

} // namespace mp::detail
