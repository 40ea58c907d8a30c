/**
 * @file symbolic_numerator.hpp
 * @brief Laurent numerators with symbolic exponents: finite sums of terms
 *        gamma * q^(a_1*l_1 + ... + a_n*l_n + b) with integer weights a_j
 *        and shift b. Exponents are integer-linear forms only.
 */
#ifndef QUNIMODAL_SYMBOLIC_NUMERATOR_HPP
#define QUNIMODAL_SYMBOLIC_NUMERATOR_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace qu {

struct SymbolicTerm {
    Rational coefficient;       // gamma, nonzero
    long shift = 0;             // b
    std::vector<long> weights;  // (a_1, ..., a_n)

    friend bool operator==(const SymbolicTerm& x, const SymbolicTerm& y) {
        return x.coefficient == y.coefficient && x.shift == y.shift && x.weights == y.weights;
    }
};

class SymbolicNumerator {
public:
    explicit SymbolicNumerator(long n_params) : n_params_(n_params) {}

    static SymbolicNumerator constant(long n_params, const Rational& c) {
        SymbolicNumerator n(n_params);
        if (c != 0) n.terms_.push_back({c, 0, std::vector<long>(n_params, 0)});
        return n;
    }

    /// The single term gamma * q^(weights . l + shift).
    static SymbolicNumerator monomial(long n_params, const Rational& gamma,
                                      std::vector<long> weights, long shift) {
        if (static_cast<long>(weights.size()) != n_params)
            throw std::invalid_argument("SymbolicNumerator: weight count mismatch");
        SymbolicNumerator n(n_params);
        if (gamma != 0) n.terms_.push_back({gamma, shift, std::move(weights)});
        return n;
    }

    long n_params() const { return n_params_; }
    const std::vector<SymbolicTerm>& terms() const { return terms_; }

    friend SymbolicNumerator operator+(const SymbolicNumerator& a, const SymbolicNumerator& b) {
        check(a, b);
        SymbolicNumerator r(a.n_params_);
        r.terms_ = a.terms_;
        r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
        r.collect();
        return r;
    }

    friend SymbolicNumerator operator-(const SymbolicNumerator& a, const SymbolicNumerator& b) {
        check(a, b);
        SymbolicNumerator r(a.n_params_);
        r.terms_ = a.terms_;
        for (const auto& t : b.terms_) r.terms_.push_back({-t.coefficient, t.shift, t.weights});
        r.collect();
        return r;
    }

    friend SymbolicNumerator operator*(const SymbolicNumerator& a, const SymbolicNumerator& b) {
        check(a, b);
        SymbolicNumerator r(a.n_params_);
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) {
                std::vector<long> w(s.weights);
                for (long j = 0; j < a.n_params_; ++j) w[j] += t.weights[j];
                r.terms_.push_back({s.coefficient * t.coefficient, s.shift + t.shift, std::move(w)});
            }
        r.collect();
        return r;
    }

    friend bool operator==(const SymbolicNumerator& a, const SymbolicNumerator& b) {
        return a.n_params_ == b.n_params_ && a.terms_ == b.terms_;
    }

    /// Instantiates the symbolic parameters; returns exponent -> coefficient.
    std::map<long, Rational> instantiate(const std::vector<long>& params) const {
        if (static_cast<long>(params.size()) != n_params_)
            throw std::invalid_argument("SymbolicNumerator::instantiate: arity mismatch");
        std::map<long, Rational> out;
        for (const auto& t : terms_) {
            long e = t.shift;
            for (long j = 0; j < n_params_; ++j) e += t.weights[j] * params[j];
            auto [it, fresh] = out.emplace(e, t.coefficient);
            if (!fresh) {
                it->second += t.coefficient;
                if (it->second == 0) out.erase(it);
            }
        }
        return out;
    }

private:
    static void check(const SymbolicNumerator& a, const SymbolicNumerator& b) {
        if (a.n_params_ != b.n_params_)
            throw std::invalid_argument("SymbolicNumerator: parameter count mismatch");
    }

    // Merge terms sharing (weights, shift), drop zeros, sort lexicographically.
    void collect() {
        std::sort(terms_.begin(), terms_.end(), [](const SymbolicTerm& x, const SymbolicTerm& y) {
            if (x.weights != y.weights) return x.weights < y.weights;
            return x.shift < y.shift;
        });
        std::vector<SymbolicTerm> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().weights == t.weights &&
                merged.back().shift == t.shift) {
                merged.back().coefficient += t.coefficient;
            } else {
                merged.push_back(std::move(t));
            }
        }
        terms_.clear();
        for (auto& t : merged)
            if (t.coefficient != 0) terms_.push_back(std::move(t));
    }

    long n_params_;
    std::vector<SymbolicTerm> terms_;
};

/// (1 - q^{l+1})(1 - q^{l+2})...(1 - q^{l+m}), the Gaussian numerator, n = 1.
inline SymbolicNumerator expand_gaussian_numerator(long n_params, long m) {
    if (m < 1) throw std::invalid_argument("expand_gaussian_numerator: m must be positive");
    if (n_params != 1)
        throw std::invalid_argument("expand_gaussian_numerator: single-parameter case only");
    SymbolicNumerator n = SymbolicNumerator::constant(1, Rational(1));
    for (long i = 1; i <= m; ++i)
        n = n * (SymbolicNumerator::constant(1, Rational(1)) -
                 SymbolicNumerator::monomial(1, Rational(1), {1}, i));
    return n;
}

namespace detail {

/// (q^{w.l+b+1}; q)_m as a symbolic numerator: product of (1 - q^{w.l+b+i}).
inline SymbolicNumerator pochhammer_shifted(long n_params, const std::vector<long>& weights,
                                            long base_shift, long m) {
    SymbolicNumerator n = SymbolicNumerator::constant(n_params, Rational(1));
    for (long i = 1; i <= m; ++i)
        n = n * (SymbolicNumerator::constant(n_params, Rational(1)) -
                 SymbolicNumerator::monomial(n_params, Rational(1), weights, base_shift + i));
    return n;
}

}  // namespace detail

/// Numerator of the Stanley-Zanello difference for m = 6, parameters (l, b):
/// (q^{l+1};q)_6 - q^{3l-2b} (q^{b+1};q)_4 (1-q^5)(1-q^6), over D = (q;q)_6.
inline SymbolicNumerator build_sz6_numerator() {
    SymbolicNumerator lhs = detail::pochhammer_shifted(2, {1, 0}, 0, 6);
    SymbolicNumerator rhs = SymbolicNumerator::monomial(2, Rational(1), {3, -2}, 0) *
                            detail::pochhammer_shifted(2, {0, 1}, 0, 4) *
                            detail::pochhammer_shifted(2, {0, 0}, 4, 2);  // (1-q^5)(1-q^6)
    return lhs - rhs;
}

/// Numerator of the Stanley-Zanello difference for m = 7 in the residue case
/// l = 5*l1 + lambda1, b = l + 2*floor(l/5) - b1 = 7*l1 + lambda1 - b1,
/// as a one-parameter numerator in l1 over D = (q;q)_7:
/// (q^{l+1};q)_7 - q^{lambda1 + 5*b1/2} (q^{b+1};q)_5 (1-q^6)(1-q^7).
inline SymbolicNumerator build_sz7_numerator(long b1, long lambda1) {
    if (b1 != 0 && b1 != 2 && b1 != 4 && b1 != 6)
        throw std::invalid_argument("build_sz7_numerator: b1 must be in {0,2,4,6}");
    if (lambda1 < 0 || lambda1 > 4)
        throw std::invalid_argument("build_sz7_numerator: lambda1 must be in [0,4]");
    SymbolicNumerator lhs = detail::pochhammer_shifted(1, {5}, lambda1, 7);
    SymbolicNumerator rhs =
        SymbolicNumerator::monomial(1, Rational(1), {0}, lambda1 + 5 * b1 / 2) *
        detail::pochhammer_shifted(1, {7}, lambda1 - b1, 5) *
        detail::pochhammer_shifted(1, {0}, 5, 2);  // (1-q^6)(1-q^7)
    return lhs - rhs;
}

/// Dispatch used by the SZ pipeline; m in {6, 7}.
inline SymbolicNumerator build_sz_numerator(long m, long b1 = 0, long lambda1 = 0) {
    if (m == 6) return build_sz6_numerator();
    if (m == 7) return build_sz7_numerator(b1, lambda1);
    throw std::invalid_argument("build_sz_numerator: only m = 6 and m = 7 are supported");
}

}  // namespace qu

#endif
