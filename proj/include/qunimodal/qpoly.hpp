/**
 * @file qpoly.hpp
 * @brief Dense polynomials in q and the Taylor expansion of 1/D(q).
 */
#ifndef QUNIMODAL_QPOLY_HPP
#define QUNIMODAL_QPOLY_HPP

#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace qu {

/// Dense polynomial in q with rational coefficients, trailing zeros trimmed.
struct DenseQPolynomial {
    std::vector<Rational> coeffs;  // coeffs[i] is the coefficient of q^i

    DenseQPolynomial() = default;
    explicit DenseQPolynomial(std::vector<Rational> c) : coeffs(std::move(c)) { trim(); }

    static DenseQPolynomial one() { return DenseQPolynomial({Rational(1)}); }

    /// 1 - q^e
    static DenseQPolynomial one_minus_qpow(long e) {
        std::vector<Rational> c(e + 1, Rational(0));
        c[0] = 1;
        c[e] = -1;
        return DenseQPolynomial(std::move(c));
    }

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }

    Rational at(long i) const {
        if (i < 0 || i >= static_cast<long>(coeffs.size())) return Rational(0);
        return coeffs[i];
    }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    friend DenseQPolynomial operator*(const DenseQPolynomial& a, const DenseQPolynomial& b) {
        if (a.coeffs.empty() || b.coeffs.empty()) return DenseQPolynomial();
        std::vector<Rational> r(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coeffs.size(); ++i) {
            if (a.coeffs[i] == 0) continue;
            for (size_t j = 0; j < b.coeffs.size(); ++j) r[i + j] += a.coeffs[i] * b.coeffs[j];
        }
        return DenseQPolynomial(std::move(r));
    }

    friend bool operator==(const DenseQPolynomial& a, const DenseQPolynomial& b) {
        return a.coeffs == b.coeffs;
    }
};

/// Product (1-q^{e_1})...(1-q^{e_r}).
inline DenseQPolynomial denominator_product(const std::vector<long>& exponents) {
    DenseQPolynomial d = DenseQPolynomial::one();
    for (long e : exponents) d = d * DenseQPolynomial::one_minus_qpow(e);
    return d;
}

/// First `count` Taylor coefficients of 1/D(q), by the recurrence D * (sum d_k q^k) = 1.
inline std::vector<Rational> taylor_inverse(const DenseQPolynomial& D, long count) {
    if (count < 1) throw std::invalid_argument("taylor_inverse: count must be positive");
    if (D.at(0) != 1) throw std::invalid_argument("taylor_inverse: D(0) must equal 1");
    std::vector<Rational> d(count, Rational(0));
    for (long k = 0; k < count; ++k) {
        Rational acc = (k == 0) ? Rational(1) : Rational(0);
        long jmax = std::min<long>(k, D.degree());
        for (long j = 1; j <= jmax; ++j) acc -= D.at(j) * d[k - j];
        d[k] = acc;  // D(0) = 1
    }
    return d;
}

}  // namespace qu

#endif
