#pragma once

#include <cstdint>

#include "mp/detail/kernel.hpp"

// Length-agnostic arithmetic cores. Inputs may carry any number of digits;
// t_out and dir control the single final rounding.

namespace mp::detail {

MpFloat add_round(const Context& ctx, const MpFloat& x, const MpFloat& y, std::int64_t t_out,
                  Dir dir);
MpFloat mul_round(const Context& ctx, const MpFloat& x, const MpFloat& y, std::int64_t t_out,
                  Dir dir);
MpFloat muli_round(const Context& ctx, const MpFloat& x, std::int64_t m, std::int64_t t_out,
                   Dir dir);
MpFloat divi_round(const Context& ctx, const MpFloat& x, std::int64_t d, std::int64_t t_out,
                   Dir dir);
MpFloat div_round(const Context& ctx, const MpFloat& x, const MpFloat& y, std::int64_t t_out,
                  Dir dir);

// Exact helpers. add_exact requires the operand scales to overlap (it
// refuses to build astronomically long vectors); muli_exact never rounds.
MpFloat muli_exact(const Context& ctx, const MpFloat& x, std::int64_t m);
MpFloat add_exact(const Context& ctx, const MpFloat& x, const MpFloat& y);

// Exact integer as an extended value (as many digits as needed).
MpFloat int_exact(const Context& ctx, std::int64_t v);

// Big-integer digit vectors, most significant digit first, values in [0, B).
using Vec = std::vector<std::int64_t>;

// Schoolbook division with remainder: u = q*v + r, 0 <= r < v. Inputs are
// trimmed internally; outputs come back trimmed (empty vector = zero).
std::pair<Vec, Vec> vec_divmod(Vec u, Vec v, std::int64_t base);

// In-place multiply by a word-sized scalar m >= 0 (any magnitude).
void vec_mul_scalar(Vec& v, std::int64_t m, std::int64_t base);

// In-place multiply by b^e (e >= 0), chunked to stay within the word.
void vec_mul_pow(Vec& v, std::int64_t b, std::int64_t e, std::int64_t base);

// Divide by a word-sized scalar, returning the remainder.
std::int64_t vec_divmod_scalar(Vec& v, std::int64_t d, std::int64_t base);

int vec_compare(const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& v);
void vec_trim(Vec& v);

// Pads or exactly reinterprets x at a new digit count (no rounding; grows
// only).
MpFloat pad_digits(const MpFloat& x, std::int64_t t);

std::int64_t digit_count(std::int64_t base, std::int64_t v);

} // namespace mp::detail
