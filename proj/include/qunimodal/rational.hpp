/**
 * @file rational.hpp
 * @brief Exact rational and integer scalars (GMP-backed), textual "p/q" form.
 */
#ifndef QUNIMODAL_RATIONAL_HPP
#define QUNIMODAL_RATIONAL_HPP

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace qu {

using Int = mpz_class;
using Rational = mpq_class;  // always canonical: gcd(|num|,den)=1, den>0

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Int& z) { return sgn(z); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline Int floor_rational(const Rational& r) {
    return floor_div(r.get_num(), r.get_den());
}

inline Int ceil_rational(const Rational& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Serializes as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::optional<Rational> parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) return std::nullopt;
    r.canonicalize();
    return r;
}

}  // namespace qu

#endif
