#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fusionforge {

// Exact rational arithmetic. mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the contract the rest of the
// library relies on.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline bool fits_int64(const Integer& z) { return z.fits_slong_p(); }

inline std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer too large for int64");
    return z.get_si();
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace fusionforge
