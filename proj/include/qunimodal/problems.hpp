/**
 * @file problems.hpp
 * @brief Ready-made assembly specifications for the studied families:
 *        Gaussian coefficient sequences p_k(l, m) and the two
 *        Stanley-Zanello difference families (m = 6 and m = 7).
 *
 * Piecewise forms are memoized per parameter set; the m = 7 denominator
 * solve is expensive enough that callers should never repeat it.
 */
#ifndef QUNIMODAL_PROBLEMS_HPP
#define QUNIMODAL_PROBLEMS_HPP

#include <map>
#include <mutex>

#include "closed_form.hpp"
#include "symbolic_numerator.hpp"

namespace qu {

/// Coefficients of the Gaussian polynomial with parameters (l, m), one free
/// parameter l (variable 0 of the parameter block).
inline AssembleSpec gaussian_assemble_spec(long m) {
    AssembleSpec spec;
    spec.numerator = expand_gaussian_numerator(1, m);
    std::vector<long> exps(m);
    for (long i = 0; i < m; ++i) exps[i] = i + 1;
    spec.denom = expand_denominator_cached(exps);
    spec.param_domain.add_ge(LinForm::var(1, 0));  // l >= 0
    spec.k_low = LinForm::konst(1, Rational(0));
    spec.k_high = make_rational(m, 2) * LinForm::var(1, 0);  // k <= m l / 2
    return spec;
}

inline const PiecewiseClosedForm& gaussian_piecewise(long m) {
    static std::mutex mu;
    static std::map<long, PiecewiseClosedForm> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, assemble_piecewise(gaussian_assemble_spec(m))).first;
    return it->second;
}

/// Forward difference p_{k+1} - p_k of the Gaussian family.
inline const PiecewiseClosedForm& gaussian_delta_piecewise(long m) {
    static std::mutex mu;
    static std::map<long, PiecewiseClosedForm> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, forward_difference(gaussian_piecewise(m))).first;
    return it->second;
}

/// Stanley-Zanello difference for m = 6 with free parameters (l, b):
/// [l+6 choose 6] - q^{3(l-b)+b} [b+4 choose 4], domain 0 <= 2b <= 3l.
inline AssembleSpec sz6_assemble_spec() {
    AssembleSpec spec;
    spec.numerator = build_sz6_numerator();
    spec.denom = expand_denominator_cached({1, 2, 3, 4, 5, 6});
    spec.param_domain.add_ge(LinForm::var(2, 0));
    spec.param_domain.add_ge(LinForm::var(2, 1));
    spec.param_domain.add_ge(Rational(3) * LinForm::var(2, 0) - Rational(2) * LinForm::var(2, 1));
    spec.k_low = LinForm::konst(2, Rational(0));
    spec.k_high = Rational(3) * LinForm::var(2, 0);  // midpoint of [l+6 choose 6]
    return spec;
}

inline const PiecewiseClosedForm& sz6_piecewise() {
    static std::mutex mu;
    static PiecewiseClosedForm* pw = nullptr;
    std::lock_guard<std::mutex> lock(mu);
    if (!pw) pw = new PiecewiseClosedForm(assemble_piecewise(sz6_assemble_spec()));
    return *pw;
}

inline const PiecewiseClosedForm& sz6_delta_piecewise() {
    static std::mutex mu;
    static PiecewiseClosedForm* pw = nullptr;
    std::lock_guard<std::mutex> lock(mu);
    if (!pw) pw = new PiecewiseClosedForm(forward_difference(sz6_piecewise()));
    return *pw;
}

/// Stanley-Zanello difference for m = 7. The parity constraint b ≡ l (mod 2)
/// and the substitution l = 5 l1 + lambda1-dependent offsets produce one
/// single-parameter family per (b1, lambda1) slice; see build_sz7_numerator.
inline AssembleSpec sz7_assemble_spec(long b1, long lambda1) {
    AssembleSpec spec;
    spec.numerator = build_sz7_numerator(b1, lambda1);
    spec.denom = expand_denominator_cached({1, 2, 3, 4, 5, 6, 7});
    spec.param_domain.add_ge(LinForm::var(1, 0) - LinForm::konst(1, Rational(1)));  // l1 >= 1
    spec.k_low = LinForm::konst(1, Rational(0));
    // midpoint of [l+7 choose 7] with l = 5 l1 + lambda1
    spec.k_high = make_rational(35, 2) * LinForm::var(1, 0) +
                  LinForm::konst(1, make_rational(7 * lambda1, 2));
    return spec;
}

inline const PiecewiseClosedForm& sz7_piecewise(long b1, long lambda1) {
    static std::mutex mu;
    static std::map<std::pair<long, long>, PiecewiseClosedForm> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(b1, lambda1);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, assemble_piecewise(sz7_assemble_spec(b1, lambda1))).first;
    return it->second;
}

}  // namespace qu

#endif
