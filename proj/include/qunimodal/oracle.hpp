/**
 * @file oracle.hpp
 * @brief Brute-force combinatorial ground truth: q-binomial coefficient
 *        tables, partition numbers, L(d), d-strict violation scanning, the
 *        KOH decomposition, and the Stanley-Zanello difference polynomials.
 *
 * Everything here is integer dynamic programming, independent of the
 * symbolic closed-form pipeline it is used to check.
 */
#ifndef QUNIMODAL_ORACLE_HPP
#define QUNIMODAL_ORACLE_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace qu {

/// Dense integer polynomial in q (exact, arbitrary precision).
using ZSeq = std::vector<Int>;

namespace detail {

inline void zseq_trim(ZSeq& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZSeq zseq_mul(const ZSeq& a, const ZSeq& b) {
    if (a.empty() || b.empty()) return {};
    ZSeq r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline ZSeq zseq_add(ZSeq a, const ZSeq& b, long shift_b = 0) {
    if (a.size() < b.size() + shift_b) a.resize(b.size() + shift_b, Int(0));
    for (size_t j = 0; j < b.size(); ++j) a[j + shift_b] += b[j];
    zseq_trim(a);
    return a;
}

inline ZSeq zseq_sub(ZSeq a, const ZSeq& b, long shift_b = 0) {
    if (a.size() < b.size() + shift_b) a.resize(b.size() + shift_b, Int(0));
    for (size_t j = 0; j < b.size(); ++j) a[j + shift_b] -= b[j];
    zseq_trim(a);
    return a;
}

// Exact division, asserts zero remainder.
inline ZSeq zseq_div_exact(ZSeq num, const ZSeq& den) {
    ZSeq quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
        Int c = num[i + den.size() - 1] / den.back();
        quot[i] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    zseq_trim(num);
    if (!num.empty()) throw std::logic_error("zseq_div_exact: nonzero remainder");
    return quot;
}

inline ZSeq one_minus_qpow(long e) {
    ZSeq c(e + 1, Int(0));
    c[0] = 1;
    c[e] = -1;
    return c;
}

}  // namespace detail

/// Coefficients p_k(l,m) for k = 0..l*m.
struct CoefficientTable {
    long l = 0;
    long m = 0;
    ZSeq coeffs;

    Int at(long k) const {
        if (k < 0 || k >= static_cast<long>(coeffs.size())) return Int(0);
        return coeffs[k];
    }
};

/// q-binomial coefficient table via the q-Pascal recurrence
/// [l+m,m] = [l+m-1,m-1] + q^m [l+m-1,m], computed on dense integer rows.
inline CoefficientTable gaussian_coefficients(long l, long m) {
    if (l < 0 || m < 0) throw std::invalid_argument("gaussian_coefficients: negative arguments");
    // row[j] holds [j+m' choose m'] for the current m'
    std::vector<ZSeq> row(l + 1, ZSeq{Int(1)});  // m' = 0
    for (long mm = 1; mm <= m; ++mm) {
        std::vector<ZSeq> next(l + 1);
        next[0] = ZSeq{Int(1)};
        for (long j = 1; j <= l; ++j) next[j] = detail::zseq_add(row[j], next[j - 1], mm);
        row = std::move(next);
    }
    CoefficientTable t{l, m, row[l]};
    t.coeffs.resize(l * m + 1, Int(0));
    return t;
}

/// Independent second route: (q^{l+1};q)_m / (q;q)_m by exact polynomial division.
inline CoefficientTable gaussian_coefficients_by_division(long l, long m) {
    ZSeq num{Int(1)}, den{Int(1)};
    for (long i = 1; i <= m; ++i) {
        num = detail::zseq_mul(num, detail::one_minus_qpow(l + i));
        den = detail::zseq_mul(den, detail::one_minus_qpow(i));
    }
    CoefficientTable t{l, m, detail::zseq_div_exact(std::move(num), den)};
    t.coeffs.resize(l * m + 1, Int(0));
    return t;
}

/// p(0), ..., p(N) by Euler's pentagonal-free DP over part sizes.
inline std::vector<Int> partition_numbers(long N) {
    std::vector<Int> p(N + 1, Int(0));
    p[0] = 1;
    for (long part = 1; part <= N; ++part)
        for (long k = part; k <= N; ++k) p[k] += p[k - part];
    return p;
}

/// Smallest L with p(L+1) - p(L) >= d.
inline long L_of_d(long d) {
    if (d < 0) throw std::invalid_argument("L_of_d: d must be nonnegative");
    long N = 16;
    while (true) {
        auto p = partition_numbers(N);
        for (long L = 0; L + 1 <= N; ++L)
            if (p[L + 1] - p[L] >= d) return L;
        N *= 2;
    }
}

/// All k in [k_low, k_high] with p_{k+1} - p_k < d.
inline std::vector<long> scan_d_strict(const CoefficientTable& t, long d, long k_low, long k_high) {
    std::vector<long> violations;
    for (long k = std::max<long>(0, k_low); k <= k_high; ++k)
        if (t.at(k + 1) - t.at(k) < d) violations.push_back(k);
    return violations;
}

/// Partitions of m in reverse lexicographic order: (m), (m-1,1), ...
inline std::vector<std::vector<long>> partitions_of(long m) {
    std::vector<std::vector<long>> all;
    std::vector<long> cur;
    std::function<void(long, long)> rec = [&](long remaining, long max_part) {
        if (remaining == 0) {
            all.push_back(cur);
            return;
        }
        for (long part = std::min(remaining, max_part); part >= 1; --part) {
            cur.push_back(part);
            rec(remaining - part, part);
            cur.pop_back();
        }
    };
    rec(m, m);
    return all;
}

/// One KOH summand: q^{2 sum binom(pi_i,2)} prod_j [j(l+2)-Y_{j-1}-Y_{j+1} choose pi_j - pi_{j+1}].
inline ZSeq koh_summand(long l, long m, const std::vector<long>& pi) {
    const long parts = static_cast<long>(pi.size());
    auto Y = [&](long j) -> long {  // Y_j = pi_1 + ... + pi_j, with Y_{parts+1} = m
        if (j <= 0) return 0;
        if (j > parts) return m;
        long s = 0;
        for (long i = 0; i < j; ++i) s += pi[i];
        return s;
    };
    long shift = 0;
    for (long p : pi) shift += p * (p - 1);  // 2 * binom(p, 2)
    ZSeq prod{Int(1)};
    for (long j = 1; j <= parts; ++j) {
        long top = j * (l + 2) - Y(j - 1) - Y(j + 1);
        long bottom = (j < parts) ? pi[j - 1] - pi[j] : pi[j - 1];
        if (bottom < 0 || top < bottom) return {};  // vanishing q-binomial
        prod = detail::zseq_mul(prod, gaussian_coefficients(top - bottom, bottom).coeffs);
    }
    ZSeq result(shift, Int(0));
    result.insert(result.end(), prod.begin(), prod.end());
    detail::zseq_trim(result);
    return result;
}

/// All KOH summands, indexed by partitions of m in reverse lexicographic order.
inline std::vector<std::pair<std::vector<long>, ZSeq>> koh_decomposition(long l, long m) {
    if (m < 1) throw std::invalid_argument("koh_decomposition: m must be positive");
    std::vector<std::pair<std::vector<long>, ZSeq>> out;
    for (const auto& pi : partitions_of(m)) out.emplace_back(pi, koh_summand(l, m, pi));
    return out;
}

/// Stanley-Zanello difference [l+m,m] - q^{m(l-b)/2+b} [b+m-2,m-2].
/// With b = l this is the Reiner-Stanton peak difference.
inline ZSeq sz_difference(long l, long m, long b) {
    if (b < 0) throw std::invalid_argument("sz_difference: b must be nonnegative");
    if (mod_floor(m * b - l * m, 2) != 0)
        throw std::invalid_argument("sz_difference: parity constraint m*b == l*m (mod 2) violated");
    ZSeq diff = gaussian_coefficients(l, m).coeffs;
    long shift = m * (l - b) / 2 + b;
    if (shift < 0) throw std::invalid_argument("sz_difference: negative shift, b out of range");
    const ZSeq sub = gaussian_coefficients(b, m - 2).coeffs;
    return detail::zseq_sub(std::move(diff), sub, shift);
}

/// Reiner-Stanton early-range difference [l+m,m] - [l+m,m-1].
inline ZSeq rs_difference_early(long l, long m) {
    ZSeq diff = gaussian_coefficients(l, m).coeffs;
    return detail::zseq_sub(std::move(diff), gaussian_coefficients(l + 1, m - 1).coeffs);
}

/// k in [0, ceil(deg/2) - 1] where c_{k+1} < c_k; empty iff the (palindromic)
/// sequence is unimodal.
inline std::vector<long> unimodality_violations(const ZSeq& c, long half_deg) {
    std::vector<long> v;
    auto at = [&](long k) { return (k >= 0 && k < (long)c.size()) ? c[k] : Int(0); };
    for (long k = 0; k < half_deg; ++k)
        if (at(k + 1) < at(k)) v.push_back(k);
    return v;
}

}  // namespace qu

#endif
