#pragma once

#include <gmpxx.h>

#include <string>

namespace qd {

// Exact rational scalar. mpq_class keeps values canonical (gcd 1,
// positive denominator), which is the invariant all oracle code relies on.
using BigReal = mpq_class;

namespace exact {

inline BigReal from_double(double x) { return BigReal(x); }

inline BigReal abs(const BigReal& x) { return x < 0 ? BigReal(-x) : x; }

// 2^e as an exact rational, e may be negative.
BigReal pow2(long e);

// Round to the nearest binary64 (ties to even). mpq_get_d truncates,
// so this goes through a 53-bit MPFR value instead.
double to_double(const BigReal& x);

// Evaluate x in `bits`-bit binary floating point, round to nearest,
// then once more to binary64. Used for display-precision spot checks.
double to_double_via_bits(const BigReal& x, int bits);

// Parse "p/q", a decimal literal (possibly with exponent), or a C99
// hex-float. Returns false on malformed input.
bool parse(const std::string& text, BigReal& out);

// Decimal rendering with the given number of significant digits.
std::string to_decimal_string(const BigReal& x, int digits);

}  // namespace exact
}  // namespace qd
