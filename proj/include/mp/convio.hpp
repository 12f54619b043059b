#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mp/context.hpp"
#include "mp/number.hpp"

namespace mp {

// x = mantissa * out_base^exp with 1 <= |mantissa| < out_base (0 for zero).
struct SciParts {
    MpFloat mantissa;
    std::int64_t exp = 0;
};

// Free-format number parser (radix ctx.in_base, 2..16). Grammar: optional
// sign (blanks allowed between the sign and the number only), a digit string
// with at most one point (assumed after the last digit if absent), and an
// optional exponent introduced by 'E', 'D', '+' or '-' with no embedded
// blanks. Leading/trailing blanks are fine. Rules 0/1 parse to within 0.6
// ulp; rules 2/3 give directed bounds.
MpFloat parse(const Context& ctx, std::string_view text);

// Line-oriented variant: truncates the line to in_record_len first.
MpFloat parse_line(const Context& ctx, std::string_view line);

// Fixed format FP.N: sign, P-N-2 places before the point, N after (radix
// ctx.out_base). N = -1 gives integer format (sign and P-1 places, no
// point). Fraction digits that cannot be significant are blanked.
std::string format_fixed(const Context& ctx, const MpFloat& x, std::int64_t width,
                         std::int64_t frac_places);

// Scientific format with n_sig significant digits: mantissa d.dd...d, then
// exp_char, then the exponent sign, then the exponent zero-padded to
// exp_field_width - 2 characters.
std::string format_sci(const Context& ctx, const MpFloat& x, std::int64_t n_sig);

// Mantissa/exponent splits against out_base.
SciParts split_sci(const Context& ctx, const MpFloat& x);
std::pair<std::int64_t, double> split_native(const Context& ctx, const MpFloat& x);

// Digit alphabet '0'..'9','A'..'F'. digit_char returns '*' outside [0, 16);
// char_digit returns -1 for characters that are not digits below in_base.
char digit_char(std::int64_t v);
std::int64_t char_digit(const Context& ctx, char c);

// Base-B digits required for n out_base places: minimal value satisfying
// B^(digits-1) >= out_base^(n-1). Integer arithmetic only.
std::int64_t digits_for(const Context& ctx, std::int64_t n_places);

// Minimal-magnitude j with b1^|j| >= b2^|n| and sign(j) = sign(n).
std::int64_t radix_exponent_bound(std::int64_t b1, std::int64_t b2, std::int64_t n);

// Native conversions; approximate by nature, for starting values only.
double to_native_float(const Context& ctx, const MpFloat& x);
MpFloat from_native_float(const Context& ctx, double f);

// Exact when |i| <= B^T, rounded per rule beyond.
MpFloat from_small_int(const Context& ctx, std::int64_t i);

// Binary record: self-describing header (version, B, T, word width) plus the
// packed words, little-endian. deserialize rejects records whose B or T do
// not match the context.
std::vector<std::uint8_t> serialize(const Context& ctx, const MpFloat& x);
MpFloat deserialize(const Context& ctx, const std::vector<std::uint8_t>& record);

// One-way human-readable rendering for debugging and golden tests.
std::string debug_dump(const Context& ctx, const MpFloat& x);

} // namespace mp
