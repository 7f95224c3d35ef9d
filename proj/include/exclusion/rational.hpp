#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace exclusion {

/// Exact fraction, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

/// p/q in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational ratio(const mpz_class& p, const mpz_class& q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

mpz_class floor_of(const Rational& r);
mpz_class ceil_of(const Rational& r);

/// Fractional part in [0, 1).
Rational frac(const Rational& r);

/// base^exp as an exact integer.
mpz_class ipow(unsigned long base, unsigned long exp);

/// base^exp as a 64-bit integer; throws ResourceError on overflow.
std::uint64_t ipow64(std::uint64_t base, unsigned exp);

/// True iff the denominator of r divides some power of base.
bool is_base_adic(const Rational& r, unsigned long base);

} // namespace exclusion
