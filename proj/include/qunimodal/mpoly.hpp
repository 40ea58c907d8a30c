/**
 * @file mpoly.hpp
 * @brief Sparse multivariate polynomials over Q and conversions to the
 *        nested dense representation used by the CAD layer.
 */
#ifndef QUNIMODAL_MPOLY_HPP
#define QUNIMODAL_MPOLY_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "linear.hpp"
#include "rational.hpp"
#include "upoly.hpp"

namespace qu {

struct MPolyQ {
    long nvars = 0;
    std::map<std::vector<long>, Rational> terms;  // exponent vector -> coefficient

    explicit MPolyQ(long n = 0) : nvars(n) {}

    static MPolyQ constant(long n, const Rational& c) {
        MPolyQ p(n);
        if (c != 0) p.terms[std::vector<long>(n, 0)] = c;
        return p;
    }
    static MPolyQ variable(long n, long i) {
        MPolyQ p(n);
        std::vector<long> e(n, 0);
        e[i] = 1;
        p.terms[e] = Rational(1);
        return p;
    }
    /// Linear form as a polynomial.
    static MPolyQ from_linform(const LinForm& f) {
        MPolyQ p(f.nvars());
        for (long i = 0; i < f.nvars(); ++i)
            if (f.coeff[i] != 0) {
                std::vector<long> e(f.nvars(), 0);
                e[i] = 1;
                p.terms[e] = f.coeff[i];
            }
        if (f.constant != 0) p.terms[std::vector<long>(f.nvars(), 0)] = f.constant;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const std::vector<long>& e, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend MPolyQ operator+(const MPolyQ& a, const MPolyQ& b) {
        MPolyQ r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend MPolyQ operator-(const MPolyQ& a, const MPolyQ& b) {
        MPolyQ r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, -c);
        return r;
    }
    friend MPolyQ operator*(const MPolyQ& a, const MPolyQ& b) {
        MPolyQ r(a.nvars);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                std::vector<long> e = ea;
                for (long i = 0; i < a.nvars; ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MPolyQ operator*(const Rational& s, const MPolyQ& a) {
        MPolyQ r(a.nvars);
        for (const auto& [e, c] : a.terms) r.add_term(e, s * c);
        return r;
    }
    friend bool operator==(const MPolyQ& a, const MPolyQ& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }

    Rational evaluate_int(const std::vector<long>& x) const {
        Rational acc(0);
        for (const auto& [e, c] : terms) {
            Rational m = c;
            for (long i = 0; i < nvars; ++i)
                for (long j = 0; j < e[i]; ++j) m *= Rational(x[i]);
            acc += m;
        }
        return acc;
    }

    long degree_in(long var) const {
        long d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, e[var]);
        return d;
    }

    /// Substitute an integer for one variable, dropping it from the list.
    MPolyQ substitute_value(long var, long value) const {
        MPolyQ r(nvars - 1);
        for (const auto& [e, c] : terms) {
            Rational m = c;
            for (long j = 0; j < e[var]; ++j) m *= Rational(value);
            std::vector<long> en;
            en.reserve(nvars - 1);
            for (long i = 0; i < nvars; ++i)
                if (i != var) en.push_back(e[i]);
            r.add_term(en, m);
        }
        return r;
    }
};

/// One-variable view (nvars must be 1).
inline QPoly to_qpoly(const MPolyQ& p) {
    if (p.nvars != 1) throw std::invalid_argument("to_qpoly: arity");
    long d = p.degree_in(0);
    std::vector<Rational> c(d + 1, Rational(0));
    for (const auto& [e, v] : p.terms) c[e[0]] = v;
    return QPoly(std::move(c));
}

/// Nested views for the CAD layer. `order[j]` is the source variable placed
/// at CAD level j+1; the last entry is the main (innermost, first-projected)
/// variable.
inline UPoly<QPoly> to_nested2(const MPolyQ& p, const std::vector<long>& order) {
    if (p.nvars != 2 || order.size() != 2) throw std::invalid_argument("to_nested2: arity");
    const long v1 = order[0], v2 = order[1];
    long d2 = p.degree_in(v2);
    std::vector<QPoly> outer(d2 + 1);
    for (long i = 0; i <= d2; ++i) outer[i] = QPoly();
    for (const auto& [e, c] : p.terms) {
        long i2 = e[v2], i1 = e[v1];
        std::vector<Rational> cs(i1 + 1, Rational(0));
        cs[i1] = c;
        outer[i2] = outer[i2] + QPoly(std::move(cs));
    }
    return UPoly<QPoly>(std::move(outer));
}

inline UPoly<UPoly<QPoly>> to_nested3(const MPolyQ& p, const std::vector<long>& order) {
    if (p.nvars != 3 || order.size() != 3) throw std::invalid_argument("to_nested3: arity");
    const long v1 = order[0], v2 = order[1], v3 = order[2];
    long d3 = p.degree_in(v3);
    std::vector<UPoly<QPoly>> outer(d3 + 1);
    for (const auto& [e, c] : p.terms) {
        long i3 = e[v3], i2 = e[v2], i1 = e[v1];
        std::vector<Rational> cs(i1 + 1, Rational(0));
        cs[i1] = c;
        std::vector<QPoly> mid(i2 + 1);
        mid[i2] = QPoly(std::move(cs));
        outer[i3] = outer[i3] + UPoly<QPoly>(std::move(mid));
    }
    return UPoly<UPoly<QPoly>>(std::move(outer));
}

}  // namespace qu

#endif
