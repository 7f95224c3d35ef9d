#include "exclusion/rational.hpp"

#include "exclusion/errors.hpp"

#include <limits>

namespace exclusion {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw PreconditionError("empty rational literal");
    Rational r;
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // Decimal literal such as "0.3": exact value of the written digits.
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        if (digits.empty() || digits.find_first_not_of("0123456789-") != std::string::npos)
            throw PreconditionError("bad rational literal '" + s + "'");
        mpz_class num(digits);
        r = Rational(num, ipow(10, s.size() - dot - 1));
    } else {
        if (s.find_first_not_of("0123456789-/") != std::string::npos || s.back() == '/')
            throw PreconditionError("bad rational literal '" + s + "'");
        if (r.set_str(s, 10) != 0) throw PreconditionError("bad rational literal '" + s + "'");
        if (r.get_den() == 0) throw PreconditionError("zero denominator in '" + s + "'");
    }
    r.canonicalize();
    return r;
}

std::string to_fraction_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

mpz_class floor_of(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

mpz_class ceil_of(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) {
    Rational f = r - Rational(floor_of(r));
    return f;
}

mpz_class ipow(unsigned long base, unsigned long exp) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
    return out;
}

std::uint64_t ipow64(std::uint64_t base, unsigned exp) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / base)
            throw ResourceError("integer power overflows 64 bits");
        out *= base;
    }
    return out;
}

bool is_base_adic(const Rational& r, unsigned long base) {
    mpz_class den = r.get_den();
    mpz_class g;
    mpz_class b(base);
    for (;;) {
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), b.get_mpz_t());
        if (g == 1) break;
        den /= g;
    }
    return den == 1;
}

} // namespace exclusion
