/**
 * @file realroots.hpp
 * @brief Exact real root isolation for rational univariate polynomials and
 *        arithmetic-free sign queries at real algebraic numbers.
 *
 * Isolation uses Descartes' rule on the Bernstein/interval transform
 * (Vincent-Collins-Akritas bisection); a Sturm-based counter serves as an
 * independent cross-check and powers interval refinement queries.
 */
#ifndef QUNIMODAL_REALROOTS_HPP
#define QUNIMODAL_REALROOTS_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "upoly.hpp"

namespace qu {

/// Open or closed rational interval (lo, hi); lo == hi encodes an exact root.
struct RootInterval {
    Rational lo, hi;
    bool exact() const { return lo == hi; }
    Rational mid() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }
};

/// Closed rational interval used for enclosures.
struct QInterval {
    Rational lo, hi;

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    Rational mag() const {
        Rational a = lo < 0 ? -lo : lo;
        Rational b = hi < 0 ? -hi : hi;
        return std::max(a, b);
    }
    friend QInterval operator+(const QInterval& a, const QInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend QInterval operator*(const QInterval& a, const QInterval& b) {
        Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }
};

inline QInterval interval_point(const Rational& r) { return {r, r}; }

inline QInterval eval_interval(const QPoly& p, const QInterval& x) {
    QInterval acc = interval_point(Rational(0));
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * x + interval_point(*it);
    return acc;
}

namespace detail {

// Descartes sign-variation bound for roots of p in (0, 1):
// variations of the coefficient sequence of (1+x)^n p(1/(1+x)).
inline long descartes_variations_01(const QPoly& p) {
    const long n = p.degree();
    if (n < 0) return 0;
    // q(x) = x^n p(1/x): reverse coefficients; then Taylor shift by 1
    std::vector<Rational> c(p.c.rbegin(), p.c.rend());
    for (long i = 0; i < n; ++i)  // synthetic Taylor shift x -> x + 1
        for (long j = n - 1; j >= i; --j) c[j] += c[j + 1];
    long var = 0;
    int prev = 0;
    for (const auto& v : c) {
        int s = sign(v);
        if (s != 0) {
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
    }
    return var;
}

// p restricted to (a, b) remapped onto (0, 1)
inline QPoly remap_01(const QPoly& p, const Rational& a, const Rational& b) {
    // p(a + (b - a) x)
    QPoly acc = QPoly::constant(p.is_zero() ? Rational(0) : p.c.back());
    QPoly lin(std::vector<Rational>{a, b - a});
    for (long i = p.degree() - 1; i >= 0; --i)
        acc = acc * lin + QPoly::constant(p.c[i]);
    return p.is_zero() ? QPoly() : acc;
}

inline void isolate_in(const QPoly& p, const Rational& a, const Rational& b,
                       std::vector<RootInterval>& out) {
    QPoly local = remap_01(p, a, b);
    long v = descartes_variations_01(local);
    if (v == 0) return;
    Rational m = (a + b) / 2;
    if (v == 1) {
        // exactly one root in (a, b); endpoints are known non-roots
        out.push_back({a, b});
        return;
    }
    if (evaluate_q(p, m) == 0) {
        out.push_back({m, m});
        // divide out (x - m) to keep the two halves clean
        QPoly rest = exact_div_poly(p, QPoly(std::vector<Rational>{-m, Rational(1)}));
        isolate_in(rest, a, m, out);
        isolate_in(rest, m, b, out);
        return;
    }
    isolate_in(p, a, m, out);
    isolate_in(p, m, b, out);
}

}  // namespace detail

/// Isolating intervals for all distinct real roots of p (any multiplicity),
/// in increasing order. Intervals are open with non-root endpoints, or exact
/// points.
inline std::vector<RootInterval> isolate_real_roots(const QPoly& poly) {
    if (poly.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    QPoly p = squarefree_part(poly);
    std::vector<RootInterval> out;
    if (p.degree() <= 0) return out;
    Rational B = root_bound(p);
    if (evaluate_q(p, -B) == 0 || evaluate_q(p, B) == 0)
        B = B + 1;  // Cauchy bound is strict, but be safe
    detail::isolate_in(p, -B, B, out);
    std::sort(out.begin(), out.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    // cross-check with Sturm
    auto st = sturm_sequence(p);
    long expected = sturm_count(st, -B, B);
    if (static_cast<long>(out.size()) != expected)
        throw std::logic_error("isolate_real_roots: Descartes/Sturm disagreement");
    return out;
}

/// A real algebraic number: a squarefree rational polynomial together with an
/// isolating interval containing exactly one of its roots.
class AlgebraicNumber {
public:
    AlgebraicNumber(QPoly defining, RootInterval iv)
        : p_(squarefree_part(defining)), iv_(iv), sturm_(sturm_sequence(p_)) {
        if (!iv_.exact()) normalize_interval();
    }

    static AlgebraicNumber from_rational(const Rational& r) {
        return AlgebraicNumber(QPoly(std::vector<Rational>{-r, Rational(1)}), {r, r});
    }

    const QPoly& defining() const { return p_; }
    const RootInterval& interval() const { return iv_; }
    bool is_rational() const { return iv_.exact(); }
    Rational rational_value() const {
        if (!iv_.exact()) throw std::logic_error("AlgebraicNumber: not (known) rational");
        return iv_.lo;
    }

    /// Halve the isolating interval.
    void refine() const {
        if (iv_.exact()) return;
        Rational m = iv_.mid();
        Rational v = evaluate_q(p_, m);
        if (v == 0) {
            iv_ = {m, m};
            return;
        }
        if (sturm_count(sturm_, iv_.lo, m) == 1)
            iv_.hi = m;
        else
            iv_.lo = m;
    }

    void refine_below(const Rational& width) const {
        while (!iv_.exact() && iv_.width() >= width) refine();
    }

    /// Exact sign of q at this number (interval fast path, then a gcd
    /// zero-test plus refinement).
    int sign_of(const QPoly& q0) const {
        if (q0.is_zero()) return 0;
        if (iv_.exact()) return sign(evaluate_q(q0, iv_.lo));
        QPoly q = q0.degree() >= p_.degree() ? divmod(q0, p_).second : q0;
        if (q.is_zero()) return 0;
        q = primitive_scale(std::move(q));
        // interval arithmetic decides all nonzero signs that are not too
        // close to zero without any polynomial gcd
        for (long i = 0, cap = 2 * p_.degree() + 4; i < cap; ++i) {
            QInterval e = eval_interval(q, {iv_.lo, iv_.hi});
            if (!e.contains_zero()) return e.lo > 0 ? 1 : -1;
            refine();
            if (iv_.exact()) return sign(evaluate_q(q, iv_.lo));
        }
        QPoly g = gcd_poly(p_, q);
        if (g.degree() > 0) {
            auto gst = sturm_sequence(g);
            if (evaluate_q(g, iv_.lo) == 0 || evaluate_q(g, iv_.hi) == 0 ||
                sturm_count(gst, iv_.lo, iv_.hi) > 0) {
                // the unique root of p_ in the interval is also a root of g
                // (roots of g are roots of p_, and p_ has only this one here)
                return 0;
            }
        }
        // no root of q in a small enough interval: refine until q is
        // sign-constant on (lo, hi)
        auto qst = sturm_sequence(squarefree_part(q));
        while (true) {
            int slo = sign(evaluate_q(q, iv_.lo));
            int shi = sign(evaluate_q(q, iv_.hi));
            if (slo != 0 && slo == shi && sturm_count(qst, iv_.lo, iv_.hi) == 0) return slo;
            refine();
            if (iv_.exact()) return sign(evaluate_q(q, iv_.lo));
        }
    }

    friend int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        if (a.iv_.exact() && b.iv_.exact()) return sign(a.iv_.lo - b.iv_.lo);
        if (a.iv_.exact()) {
            // sign of (b - a) via the linear polynomial x - a
            return -b.sign_of(QPoly(std::vector<Rational>{-a.iv_.lo, Rational(1)}));
        }
        if (b.iv_.exact())
            return a.sign_of(QPoly(std::vector<Rational>{-b.iv_.lo, Rational(1)}));

        QPoly g = gcd_poly(a.p_, b.p_);
        const bool both_roots_of_g = g.degree() > 0 && a.sign_of(g) == 0 && b.sign_of(g) == 0;
        std::vector<QPoly> gst;
        if (both_roots_of_g) gst = sturm_sequence(g);
        while (true) {
            // open isolating intervals with non-root endpoints: touching
            // closures still mean strict order
            if (a.iv_.hi <= b.iv_.lo) return -1;
            if (b.iv_.hi <= a.iv_.lo) return 1;
            if (both_roots_of_g) {
                Rational lo = std::min(a.iv_.lo, b.iv_.lo);
                Rational hi = std::max(a.iv_.hi, b.iv_.hi);
                if (sturm_count(gst, lo, hi) == 1) return 0;  // same root of g
            }
            a.refine();
            b.refine();
            if (a.iv_.exact() || b.iv_.exact()) return compare(a, b);
        }
    }

    friend bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return compare(a, b) < 0;
    }
    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return compare(a, b) == 0;
    }

    /// A rational strictly above (resp. below) this number.
    Rational upper() const { return iv_.exact() ? iv_.lo + 1 : iv_.hi; }
    Rational lower() const { return iv_.exact() ? iv_.lo - 1 : iv_.lo; }

private:
    void normalize_interval() {
        // make endpoints non-roots of p_ and ensure exactly one root inside
        if (evaluate_q(p_, iv_.lo) == 0) {
            iv_ = {iv_.lo, iv_.lo};
            return;
        }
        if (evaluate_q(p_, iv_.hi) == 0) {
            iv_ = {iv_.hi, iv_.hi};
            return;
        }
        if (sturm_count(sturm_, iv_.lo, iv_.hi) != 1)
            throw std::invalid_argument("AlgebraicNumber: interval does not isolate one root");
    }

    QPoly p_;
    mutable RootInterval iv_;
    std::vector<QPoly> sturm_;
};

}  // namespace qu

#endif
