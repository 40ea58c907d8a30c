/**
 * @file cyclotomic.hpp
 * @brief Arithmetic in the cyclotomic field Q(w)/(Phi_L(w)).
 *
 * Elements are dense coefficient vectors of length phi(L), eagerly reduced
 * modulo Phi_L. Inverses go through the extended polynomial gcd with Phi_L,
 * linear systems through Gaussian elimination with exact field pivots.
 */
#ifndef QUNIMODAL_CYCLOTOMIC_HPP
#define QUNIMODAL_CYCLOTOMIC_HPP

#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace qu {

inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Phi_L as an integer coefficient vector, constant term first.
struct CyclotomicPolynomial {
    long order = 1;
    std::vector<Int> coeffs;  // monic, degree phi(order)

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

namespace detail {

// Exact division of integer polynomials, quotient must be exact.
inline std::vector<Int> zpoly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    assert(!den.empty() && den.back() != 0);
    std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
    for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
        Int c = num[i + den.size() - 1] / den.back();
        quot[i] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const Int& c : num) {
        (void)c;
        assert(c == 0);
    }
    return quot;
}

}  // namespace detail

/// Phi_L computed by dividing x^L - 1 by the Phi_d of all proper divisors d.
inline const CyclotomicPolynomial& cyclotomic_polynomial(long L) {
    if (L < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
    static std::map<long, CyclotomicPolynomial> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(L);
    if (it != cache.end()) return it->second;

    std::function<const CyclotomicPolynomial&(long)> get = [&](long n) -> const CyclotomicPolynomial& {
        auto found = cache.find(n);
        if (found != cache.end()) return found->second;
        std::vector<Int> num(n + 1, Int(0));
        num[0] = -1;
        num[n] = 1;  // x^n - 1
        for (long d = 1; d < n; ++d) {
            if (n % d == 0) num = detail::zpoly_divide_exact(std::move(num), get(d).coeffs);
        }
        CyclotomicPolynomial result{n, std::move(num)};
        return cache.emplace(n, std::move(result)).first->second;
    };
    return get(L);
}

/// Element of Q(w)/(Phi_L(w)); coeffs has length phi(L).
class CycNum {
public:
    CycNum() : order_(1), coeffs_(1, Rational(0)) {}

    explicit CycNum(long order) : order_(order), coeffs_(euler_phi(order), Rational(0)) {}

    CycNum(long order, const Rational& scalar) : CycNum(order) { coeffs_[0] = scalar; }

    static CycNum from_coeffs(long order, std::vector<Rational> coeffs) {
        CycNum n(order);
        if (coeffs.size() != n.coeffs_.size())
            throw std::invalid_argument("CycNum: coefficient count must equal phi(L)");
        n.coeffs_ = std::move(coeffs);
        return n;
    }

    /// w^(e mod L), reduced mod Phi_L. e may be negative.
    static CycNum omega_power(long order, long e) {
        e = mod_floor(e, order);
        const auto& table = omega_table(order);
        return table[e];
    }

    long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    const Rational& rational_part() const { return coeffs_[0]; }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    friend CycNum operator+(const CycNum& a, const CycNum& b) {
        check_orders(a, b);
        CycNum r = a;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }

    friend CycNum operator-(const CycNum& a, const CycNum& b) {
        check_orders(a, b);
        CycNum r = a;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
        return r;
    }

    CycNum operator-() const {
        CycNum r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        check_orders(a, b);
        const size_t n = a.coeffs_.size();
        std::vector<Rational> prod(2 * n - 1, Rational(0));
        for (size_t i = 0; i < n; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                if (b.coeffs_[j] == 0) continue;
                prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return CycNum::reduce(a.order_, std::move(prod));
    }

    friend CycNum operator*(const Rational& s, const CycNum& a) {
        CycNum r = a;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }

    CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
    CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
    CycNum& operator*=(const CycNum& b) { return *this = *this * b; }

    /// Multiplicative inverse via extended gcd with Phi_L.
    CycNum inverse() const {
        if (is_zero()) throw std::domain_error("CycNum::inverse: division by zero");
        if (is_rational()) return CycNum(order_, Rational(1) / coeffs_[0]);
        // extended Euclid on (this, Phi_L) over Q
        std::vector<Rational> r0 = coeffs_, r1 = phi_rational(order_);
        trim(r0);
        std::vector<Rational> s0{Rational(1)}, s1;  // Bezout coefficients for r0
        while (!r1.empty()) {
            auto [quot, rem] = qpoly_divmod(r0, r1);
            std::vector<Rational> s2 = qpoly_sub(s0, qpoly_mul(quot, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 = gcd = s0*this + t*Phi_L; nonzero constant since Phi_L is irreducible
        if (r0.size() != 1)
            throw std::domain_error("CycNum::inverse: input is a zero divisor (unreduced element?)");
        Rational inv_gcd = Rational(1) / r0[0];
        for (auto& c : s0) c *= inv_gcd;
        s0.resize(2 * coeffs_.size(), Rational(0));
        return CycNum::reduce(order_, std::move(s0));
    }

    /// Reduces an arbitrary coefficient vector (any length) modulo Phi_L.
    static CycNum reduce(long order, std::vector<Rational> raw) {
        const auto& phi = cyclotomic_polynomial(order);
        const long deg = phi.degree();
        for (long i = static_cast<long>(raw.size()) - 1; i >= deg; --i) {
            if (raw[i] == 0) continue;
            Rational c = raw[i];  // Phi is monic
            raw[i] = 0;
            for (long j = 0; j < deg; ++j) raw[i - deg + j] -= c * Rational(phi.coeffs[j]);
        }
        raw.resize(deg, Rational(0));
        CycNum result(order);
        result.coeffs_ = std::move(raw);
        return result;
    }

private:
    static void check_orders(const CycNum& a, const CycNum& b) {
        if (a.order_ != b.order_) throw std::invalid_argument("CycNum: order mismatch");
    }

    static std::vector<Rational> phi_rational(long order) {
        const auto& phi = cyclotomic_polynomial(order);
        std::vector<Rational> r(phi.coeffs.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = Rational(phi.coeffs[i]);
        return r;
    }

    static const std::vector<CycNum>& omega_table(long order) {
        static std::map<long, std::vector<CycNum>> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(order);
        if (it != cache.end()) return it->second;
        std::vector<CycNum> table;
        table.reserve(order);
        for (long e = 0; e < order; ++e) {
            std::vector<Rational> raw(e + 1, Rational(0));
            raw[e] = 1;
            table.push_back(CycNum::reduce(order, std::move(raw)));
        }
        return cache.emplace(order, std::move(table)).first->second;
    }

    static void trim(std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }

    static std::pair<std::vector<Rational>, std::vector<Rational>> qpoly_divmod(
        std::vector<Rational> num, const std::vector<Rational>& den) {
        std::vector<Rational> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0,
                                   Rational(0));
        for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
            Rational c = num[i + den.size() - 1] / den.back();
            quot[i] = c;
            if (c != 0)
                for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
        }
        trim(num);
        return {std::move(quot), std::move(num)};
    }

    static std::vector<Rational> qpoly_mul(const std::vector<Rational>& a,
                                           const std::vector<Rational>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    }

    static std::vector<Rational> qpoly_sub(std::vector<Rational> a,
                                           const std::vector<Rational>& b) {
        if (b.size() > a.size()) a.resize(b.size(), Rational(0));
        for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        trim(a);
        return a;
    }

    long order_;
    std::vector<Rational> coeffs_;
};

inline CycNum power_of_omega(long e, long order) { return CycNum::omega_power(order, e); }

/// Exact solve of A x = b over Q(w) by Gaussian elimination, first-nonzero pivoting.
inline std::vector<CycNum> solve_linear_system(std::vector<std::vector<CycNum>> A,
                                               std::vector<CycNum> b) {
    const size_t n = A.size();
    if (n == 0 || b.size() != n) throw std::invalid_argument("solve_linear_system: shape mismatch");
    for (auto& row : A)
        if (row.size() != n) throw std::invalid_argument("solve_linear_system: matrix not square");

    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && A[pivot][col].is_zero()) ++pivot;
        if (pivot == n)
            throw std::domain_error("solve_linear_system: singular matrix at pivot column " +
                                    std::to_string(col));
        std::swap(A[pivot], A[col]);
        std::swap(b[pivot], b[col]);
        CycNum inv = A[col][col].inverse();
        for (size_t j = col; j < n; ++j) A[col][j] *= inv;
        b[col] *= inv;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || A[row][col].is_zero()) continue;
            CycNum factor = A[row][col];
            for (size_t j = col; j < n; ++j) A[row][j] -= factor * A[col][j];
            b[row] -= factor * b[col];
        }
    }
    return b;
}

}  // namespace qu

#endif
