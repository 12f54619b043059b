#pragma once

#include <cstdint>
#include <string_view>

namespace mp {

struct MpFloat;

// Rounding rules, in the order used by the RNDRL parameter.
enum class Round : int {
    Truncate = 0,    // chop towards zero (the default; cheapest)
    NearestEven = 1, // round to nearest, ties to even last digit
    Down = 2,        // towards -infinity (interval lower bound)
    Up = 3,          // towards +infinity (interval upper bound)
};

// Arithmetic configuration: base, precision, exponent range, rounding rule,
// I/O settings and run telemetry. A Context is a plain value; every
// operation takes one explicitly and there is no global state. The counter
// fields are the only mutable state; share a Context across threads
// read-only, or give each thread its own copy if counters matter.
struct Context {
    std::int64_t base = 0;    // B, >= 2; 8*B^2-1 must fit in max_int
    std::int64_t digits = 0;  // T, significand length, >= 2
    std::int64_t max_exp = 0; // M, exponents lie in [1-M, M]; M > T, 4M <= max_int
    Round round_rule = Round::Truncate;

    int word_bits = 64;        // effective integer word length
    std::int64_t max_int = 0;  // 2^(word_bits-1) - 1

    std::int64_t in_base = 10;         // radix for parsed text, 2..16
    std::int64_t out_base = 10;        // radix for formatted text, 2..16
    std::int64_t exp_field_width = 6;  // width of exponent field in scientific output
    char exp_char = 'E';               // exponent marker, not a digit/sign/blank
    std::int64_t in_record_len = 80;   // line length for line-oriented parsing

    std::int64_t max_underflows = 0;   // 0 = unlimited
    std::int64_t decimal_places = 0;   // the request that produced (base, digits)

    // Run telemetry, updated by the rounding kernel.
    mutable std::int64_t underflow_count = 0;
    mutable std::int64_t exp_seen_max = 0; // starts at -M; M+1 marks an overflow
    mutable std::int64_t exp_seen_min = 0; // starts at M+1; -M marks an underflow

    // Copy with a different working precision; telemetry starts fresh.
    Context with_digits(std::int64_t t) const;

    bool overflow_seen() const { return exp_seen_max > max_exp; }
};

// Builds a Context giving at least `decimal_places` decimal digits of
// precision on a machine with the given effective integer word length.
// Picks the largest power-of-two base B with 8*B^2-1 <= 2^(word_bits-1)-1
// and the minimal T >= 2 with B^(T-1) >= 10^(decimal_places-1).
Context init(std::int64_t decimal_places, int word_bits = 64);

// Validates every invariant; throws ConfigError naming the violation.
void validate(const Context& ctx);

// Named-parameter access. Names are matched case-insensitively on their
// first three characters ("BASE", "NUMDIG", "MAXEXP", "RNDRL", "MXINT",
// "KTUNFL", "MXUNFL", "MXEXPN", "MNEXPN", "DECPL", "EXWID", "INRECL",
// "INBASE", "OUTBAS", "EXPCH"). set_param returns the updated context and
// leaves the input untouched on error.
Context set_param(const Context& ctx, std::string_view name, std::int64_t value);
std::int64_t get_param(const Context& ctx, std::string_view name);

// Machine-precision bound for the current rounding rule:
//   Truncate     1.01 * B^(1-T), rounded up
//   NearestEven  0.5  * B^(1-T), rounded up
//   Down / Up           B^(1-T), exact
MpFloat epsilon(const Context& ctx);

// Largest positive value, B^M - B^(M-T) (all digits B-1). Exact.
MpFloat max_real(const Context& ctx);

// Smallest positive normalized value, B^(-M). Exact.
MpFloat min_real(const Context& ctx);

} // namespace mp
