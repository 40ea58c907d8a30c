/**
 * @file algebraic_tower.hpp
 * @brief Exact arithmetic relative to a tower Q < Q(a) < Q(a)(b) of real
 *        algebraic extensions, with dynamic splitting of reducible defining
 *        polynomials (triangular-set style evaluation).
 *
 * The defining polynomials are only required to be squarefree. Whenever a
 * gcd certifies a factorization, the tower shrinks its defining polynomial
 * to the factor containing the tracked real point; representatives held by
 * callers stay valid because they denote the same residue at that point.
 *
 * A Context exposes field operations for its coefficient level; RelPoly
 * provides polynomials over a context: remainder sequences, Sturm counts,
 * root isolation with interval-arithmetic bounds, and sign queries at
 * isolated roots. Contexts for Q, Q(a), Q(a)(b) instantiate the same code
 * for CAD lifting in up to three variables.
 */
#ifndef QUNIMODAL_ALGEBRAIC_TOWER_HPP
#define QUNIMODAL_ALGEBRAIC_TOWER_HPP

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "realroots.hpp"
#include "upoly.hpp"

namespace qu {

// ---------------------------------------------------------------------------
// Level-1 state: the number a with its (shrinkable) defining polynomial
// ---------------------------------------------------------------------------

class TowerVar {
public:
    TowerVar(QPoly defining, RootInterval iv) : alpha_(std::move(defining), iv) {}

    const AlgebraicNumber& value() const { return alpha_; }
    const QPoly& defining() const { return alpha_.defining(); }

    int sign_of(const QPoly& q) const { return alpha_.sign_of(q); }

    void shrink_defining(const QPoly& factor) {
        alpha_ = AlgebraicNumber(factor, alpha_.interval());
    }

    /// Rational enclosure of e(a), refined below the requested width when the
    /// interval of a permits it.
    QInterval enclose(const QPoly& e, const Rational& width) const {
        alpha_.refine_below(width);
        const auto& iv = alpha_.interval();
        return eval_interval(e, {iv.lo, iv.hi});
    }

private:
    mutable AlgebraicNumber alpha_;
};

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

/// Base field Q.
struct CtxQ {
    using Elem = Rational;
    int sign_of(const Elem& e) const { return sign(e); }
    Elem inv(const Elem& e) const {
        if (e == 0) throw std::domain_error("CtxQ::inv of zero");
        return Rational(1) / e;
    }
    Elem reduce(const Elem& e) const { return e; }
    QInterval enclose(const Elem& e, const Rational&) const { return interval_point(e); }
    Elem from_rational(const Rational& r) const { return r; }
};

namespace relpoly_detail {

inline QPoly ext_gcd_qpoly(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v) {
    QPoly r0 = a, r1 = b;
    QPoly u0 = QPoly::constant(Rational(1)), u1 = QPoly();
    QPoly v0 = QPoly(), v1 = QPoly::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        QPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        // rescale the row by a positive constant: the identity
        // u*a + v*b = r is preserved and coefficient growth is tamed
        Int num(0), den(1);
        for (const auto& x : r.c) {
            if (x == 0) continue;
            num = gcd(num, x.get_num());
            den = lcm(den, x.get_den());
        }
        if (num != 0 && num != den) {
            Rational s(den, num);
            s.canonicalize();
            r = s * r;
            u2 = s * u2;
            v2 = s * v2;
        }
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    u = u0;
    v = v0;
    return r0;
}

// Rational content accumulation across arbitrarily nested UPoly coefficients.
inline void content_collect(const Rational& r, Int& num_g, Int& den_l) {
    if (r == 0) return;
    num_g = gcd(num_g, r.get_num());
    den_l = lcm(den_l, r.get_den());
}
template <typename C>
void content_collect(const UPoly<C>& p, Int& num_g, Int& den_l) {
    for (const auto& x : p.c) content_collect(x, num_g, den_l);
}
inline void content_scale(Rational& r, const Rational& s) { r *= s; }
template <typename C>
void content_scale(UPoly<C>& p, const Rational& s) {
    for (auto& x : p.c) content_scale(x, s);
}

/// p scaled by the positive rational that clears the content of all nested
/// rational coefficients; signs (hence gcd structure and Sturm chains) are
/// unaffected, coefficient growth in remainder sequences is tamed.
template <typename P>
P primitive_content(P p) {
    Int num(0), den(1);
    content_collect(p, num, den);
    if (num == 0 || num == den) return p;
    Rational s(den, num);
    s.canonicalize();
    content_scale(p, s);
    return p;
}

}  // namespace relpoly_detail

/// Q(a) with dynamic shrinking of the defining polynomial of a.
struct CtxAlg {
    using Elem = QPoly;
    std::shared_ptr<TowerVar> var;

    explicit CtxAlg(std::shared_ptr<TowerVar> v) : var(std::move(v)) {}

    Elem reduce(const Elem& e) const { return divmod(e, var->defining()).second; }
    Elem from_rational(const Rational& r) const { return QPoly::constant(r); }

    int sign_of(const Elem& e) const { return var->sign_of(e); }

    Elem inv(const Elem& e0) const {
        Elem e = reduce(e0);
        while (true) {
            QPoly g = gcd_poly(e, var->defining());
            if (g.degree() <= 0) {
                QPoly u, v;
                QPoly d = relpoly_detail::ext_gcd_qpoly(e, var->defining(), u, v);
                // d is a nonzero constant
                return reduce(ring_traits<Rational>::exact_div(Rational(1), d.at(0)) * u);
            }
            if (var->sign_of(g) == 0)
                throw std::domain_error("CtxAlg::inv: element vanishes at a");
            // a is a root of the cofactor: shrink and retry
            var->shrink_defining(monic(exact_div_poly(var->defining(), g)));
            e = reduce(e);
        }
    }

    QInterval enclose(const Elem& e, const Rational& width) const {
        return var->enclose(e, width);
    }
};

// ---------------------------------------------------------------------------
// Polynomials over a context
// ---------------------------------------------------------------------------

template <typename Ctx>
struct RelPoly {
    using Elem = typename Ctx::Elem;
    using P = UPoly<Elem>;

    Ctx ctx;

    explicit RelPoly(Ctx c) : ctx(std::move(c)) {}

    /// Drop leading coefficients that vanish at the tracked point, and reduce
    /// the rest; the result's leading coefficient is a unit.
    P trim(P p) const {
        for (auto& coef : p.c) coef = ctx.reduce(coef);
        p.trim();
        while (!p.is_zero() && ctx.sign_of(p.lc()) == 0) {
            p.c.pop_back();
            p.trim();
        }
        return p;
    }

    P monic_rel(P p) const {
        p = trim(p);
        if (p.is_zero()) return p;
        Elem linv = ctx.inv(p.lc());
        for (auto& coef : p.c) coef = ctx.reduce(linv * coef);
        return p;
    }

    std::pair<P, P> divmod_rel(const P& a0, const P& b0) const {
        P b = trim(b0);
        if (b.is_zero()) throw std::domain_error("RelPoly::divmod_rel: zero divisor");
        Elem linv = ctx.inv(b.lc());
        P r = trim(a0);
        std::vector<Elem> q(r.degree() >= b.degree() ? r.degree() - b.degree() + 1 : 0,
                            ring_traits<Elem>::zero());
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Elem f = ctx.reduce(r.lc() * linv);
            long shift = r.degree() - b.degree();
            q[shift] = f;
            std::vector<Elem> sub(shift, ring_traits<Elem>::zero());
            for (const auto& x : b.c) sub.push_back(ctx.reduce(f * x));
            r = trim(r - P(std::move(sub)));
        }
        return {P(std::move(q)), r};
    }

    P gcd_rel(P a, P b) const {
        a = trim(a);
        b = trim(b);
        while (!b.is_zero()) {
            auto [q, r] = divmod_rel(a, b);
            a = std::move(b);
            b = relpoly_detail::primitive_content(std::move(r));
        }
        return monic_rel(a);
    }

    P derivative_rel(const P& p) const {
        P d(p);
        if (d.c.size() <= 1) return P();
        std::vector<Elem> r(d.c.size() - 1, ring_traits<Elem>::zero());
        for (size_t i = 1; i < d.c.size(); ++i) {
            Elem m = ctx.from_rational(Rational(static_cast<long>(i)));
            r[i - 1] = ctx.reduce(m * d.c[i]);
        }
        return trim(P(std::move(r)));
    }

    P squarefree_rel(const P& p0) const {
        P p = trim(p0);
        if (p.degree() <= 1) return monic_rel(p);
        P g = gcd_rel(p, derivative_rel(p));
        if (g.degree() <= 0) return monic_rel(p);
        auto [q, r] = divmod_rel(p, g);
        return monic_rel(q);
    }

    /// Value at a rational point of the main variable: an Elem.
    Elem eval_at(const P& p, const Rational& x) const {
        Elem acc = ring_traits<Elem>::zero();
        Elem xr = ctx.from_rational(x);
        for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
            acc = ctx.reduce(acc * xr + *it);
        return acc;
    }

    std::vector<P> sturm_rel(const P& p0) const {
        std::vector<P> s;
        P p = trim(p0);
        if (p.is_zero()) return s;
        s.push_back(p);
        s.push_back(derivative_rel(p));
        while (!s.back().is_zero()) {
            auto [q, r] = divmod_rel(s[s.size() - 2], s.back());
            // positive rescaling keeps the generalized Sturm chain property
            s.push_back(relpoly_detail::primitive_content(trim(P() - r)));
        }
        s.pop_back();
        return s;
    }

    long sign_changes(const std::vector<P>& sturm, const Rational& x) const {
        long changes = 0;
        int prev = 0;
        for (const auto& p : sturm) {
            int sg = ctx.sign_of(eval_at(p, x));
            if (sg != 0) {
                if (prev != 0 && sg != prev) ++changes;
                prev = sg;
            }
        }
        return changes;
    }

    /// Roots of squarefree p in (a, b].
    long count_roots(const std::vector<P>& sturm, const Rational& a, const Rational& b) const {
        return sign_changes(sturm, a) - sign_changes(sturm, b);
    }

    /// Rational B with all real roots of p in (-B, B), via interval
    /// enclosures of the coefficients (Cauchy bound).
    Rational root_bound_rel(const P& p) const {
        if (p.degree() <= 0) return Rational(1);
        Rational width(1);
        while (true) {
            QInterval lead = ctx.enclose(p.lc(), width);
            if (!lead.contains_zero()) {
                Rational inv_min = lead.lo > 0 ? lead.lo : -lead.hi;  // min |lc|
                Rational m(0);
                for (long i = 0; i < p.degree(); ++i) {
                    QInterval ci = ctx.enclose(p.at(i), width);
                    Rational mag = ci.mag() / inv_min;
                    if (mag > m) m = mag;
                }
                return m + 1;
            }
            width = width / 4;
        }
    }

    /// Isolating intervals (lo, hi) for the real roots of p at the tracked
    /// point, sorted increasingly; endpoints are non-roots. When requested,
    /// the Sturm chain of the squarefree part is handed back for reuse.
    std::vector<RootInterval> isolate(const P& p0, std::vector<P>* sturm_out = nullptr) const {
        P p = squarefree_rel(p0);
        std::vector<RootInterval> out;
        if (p.degree() <= 0) return out;
        auto st = sturm_rel(p);
        if (sturm_out) *sturm_out = st;
        Rational B = root_bound_rel(p);
        // Sturm counting uses (a, b]; shift the bound if an endpoint is a root
        while (ctx.sign_of(eval_at(p, B)) == 0 || ctx.sign_of(eval_at(p, -B)) == 0) B += 1;
        std::function<void(const Rational&, const Rational&, long)> go =
            [&](const Rational& a, const Rational& b, long count) {
                if (count == 0) return;
                if (count == 1) {
                    out.push_back({a, b});
                    return;
                }
                Rational m = (a + b) / 2;
                while (ctx.sign_of(eval_at(p, m)) == 0) m = (a + m) / 2;  // nudge off a root
                long left = count_roots(st, a, m);
                go(a, m, left);
                go(m, b, count - left);
            };
        go(-B, B, count_roots(st, -B, B));
        return out;
    }

    /// Exact sign of s at the root of r isolated by iv (r squarefree at the
    /// point, endpoints non-roots of r). Interval arithmetic handles nonzero
    /// signs; the exact gcd test only fires when the value could be zero. A
    /// precomputed Sturm chain of r can be supplied for reuse across queries.
    int sign_at_root(const P& r0, RootInterval iv, const P& s0,
                     const std::vector<P>* rst_in = nullptr) const {
        P s = trim(s0);
        if (s.is_zero()) return 0;
        if (iv.exact()) return ctx.sign_of(eval_at(s, iv.lo));
        P r = trim(r0);
        std::vector<P> rst_local;
        auto rst = [&]() -> const std::vector<P>& {
            if (rst_in) return *rst_in;
            if (rst_local.empty()) rst_local = sturm_rel(r);
            return rst_local;
        };
        // bisect iv toward the root; true when the root is hit exactly
        auto bisect = [&]() -> bool {
            Rational m = (iv.lo + iv.hi) / 2;
            if (ctx.sign_of(eval_at(r, m)) == 0) {
                iv = {m, m};
                return true;
            }
            if (count_roots(rst(), iv.lo, m) == 1)
                iv.hi = m;
            else
                iv.lo = m;
            return false;
        };
        auto enclose_s = [&](const Rational& width) {
            QInterval acc = interval_point(Rational(0));
            QInterval x{iv.lo, iv.hi};
            for (auto it = s.c.rbegin(); it != s.c.rend(); ++it)
                acc = acc * x + ctx.enclose(*it, width);
            return acc;
        };
        Rational width = (iv.hi - iv.lo) / 4;
        for (long i = 0, cap = r.degree() + s.degree() + 8; i < cap; ++i) {
            QInterval e = enclose_s(width);
            if (!e.contains_zero()) return e.lo > 0 ? 1 : -1;
            if (bisect()) return ctx.sign_of(eval_at(s, iv.lo));
            width = width / 4;
        }
        // plausibly zero: decide exactly via a common factor with r
        P g = gcd_rel(r, s);
        if (g.degree() >= 1) {
            auto gst = sturm_rel(g);
            if (count_roots(gst, iv.lo, iv.hi) >= 1) return 0;  // the root kills s too
        }
        while (true) {
            QInterval e = enclose_s(width);
            if (!e.contains_zero()) return e.lo > 0 ? 1 : -1;
            if (bisect()) return ctx.sign_of(eval_at(s, iv.lo));
            width = width / 4;
        }
    }
};

/// Q(a)(b): coefficients are UPoly<QPoly> reduced mod (p1(x), p2(x, y)).
/// p2 is kept monic in y over Q(a) and squarefree there; inversions shrink
/// p2 (and transitively p1) as gcds certify factorizations.
struct CtxAlg2 {
    using Elem = UPoly<QPoly>;  // polynomial in y with Q[x]-coefficients

    std::shared_ptr<TowerVar> var1;          // a
    std::shared_ptr<Elem> p2;                // defining polynomial of b over Q(a)
    std::shared_ptr<RootInterval> beta_iv;   // isolating interval for b among roots of p2(a, .)
    std::shared_ptr<std::vector<Elem>> p2_st;  // cached Sturm chain of p2

    CtxAlg2(std::shared_ptr<TowerVar> a, Elem defining2, RootInterval biv)
        : var1(std::move(a)),
          p2(std::make_shared<Elem>(std::move(defining2))),
          beta_iv(std::make_shared<RootInterval>(biv)),
          p2_st(std::make_shared<std::vector<Elem>>()) {
        RelPoly<CtxAlg> k1poly{CtxAlg(var1)};
        *p2 = k1poly.squarefree_rel(*p2);
        if (p2->degree() < 1) throw std::invalid_argument("CtxAlg2: trivial defining polynomial");
    }

    RelPoly<CtxAlg> level1() const { return RelPoly<CtxAlg>{CtxAlg(var1)}; }

    const std::vector<Elem>& p2_sturm() const {
        if (p2_st->empty()) *p2_st = level1().sturm_rel(*p2);
        return *p2_st;
    }

    Elem reduce(const Elem& e) const {
        RelPoly<CtxAlg> k1 = level1();
        return k1.divmod_rel(e, *p2).second;
    }
    Elem from_rational(const Rational& r) const {
        return Elem::constant(QPoly::constant(r));
    }

    /// Refine the isolating interval of b by one bisection step.
    void refine_beta() const {
        RelPoly<CtxAlg> k1 = level1();
        if (beta_iv->exact()) return;
        Rational m = beta_iv->mid();
        QPoly v = k1.eval_at(*p2, m);
        if (var1->sign_of(v) == 0) {
            *beta_iv = {m, m};
            return;
        }
        if (k1.count_roots(p2_sturm(), beta_iv->lo, m) == 1)
            beta_iv->hi = m;
        else
            beta_iv->lo = m;
    }

    int sign_of(const Elem& e0) const {
        RelPoly<CtxAlg> k1 = level1();
        Elem e = k1.trim(reduce(e0));
        if (e.is_zero()) return 0;
        if (beta_iv->exact()) return var1->sign_of(k1.eval_at(e, beta_iv->lo));
        // interval arithmetic decides nonzero signs away from zero
        Rational width = (beta_iv->hi - beta_iv->lo) / 4;
        for (long i = 0, cap = p2->degree() + e.degree() + 8; i < cap; ++i) {
            QInterval en = enclose(e, width);
            if (!en.contains_zero()) return en.lo > 0 ? 1 : -1;
            refine_beta();
            if (beta_iv->exact()) return var1->sign_of(k1.eval_at(e, beta_iv->lo));
            width = width / 4;
        }
        // plausibly zero: does b root e?
        Elem g = k1.gcd_rel(e, *p2);
        if (g.degree() >= 1) {
            auto gst = k1.sturm_rel(g);
            if (k1.count_roots(gst, beta_iv->lo, beta_iv->hi) >= 1) return 0;
        }
        while (true) {
            QInterval en = enclose(e, width);
            if (!en.contains_zero()) return en.lo > 0 ? 1 : -1;
            refine_beta();
            if (beta_iv->exact()) return var1->sign_of(k1.eval_at(e, beta_iv->lo));
            width = width / 4;
        }
    }

    Elem inv(const Elem& e0) const {
        RelPoly<CtxAlg> k1 = level1();
        Elem e = k1.trim(reduce(e0));
        while (true) {
            if (e.is_zero()) throw std::domain_error("CtxAlg2::inv of zero");
            Elem g = k1.gcd_rel(e, *p2);
            if (g.degree() <= 0) {
                // extended euclid over Q(a)[y]
                Elem r0 = *p2, r1 = e;
                Elem u0, u1 = Elem::constant(QPoly::constant(Rational(1)));
                while (!r1.is_zero()) {
                    auto [q, r] = k1.divmod_rel(r0, r1);
                    Elem u2 = k1.trim(u0 - q * u1);
                    for (auto& cc : u2.c) cc = k1.ctx.reduce(cc);
                    r0 = r1;
                    r1 = k1.trim(r);
                    u0 = u1;
                    u1 = u2;
                }
                // r0 = gcd = unit Elem of degree 0; u0 * e = r0 mod p2
                QPoly unit_inv = k1.ctx.inv(r0.at(0));
                Elem inv = u0;
                for (auto& cc : inv.c) cc = k1.ctx.reduce(unit_inv * cc);
                return reduce(inv);
            }
            auto gst = k1.sturm_rel(g);
            bool beta_in_g = !beta_iv->exact()
                                 ? k1.count_roots(gst, beta_iv->lo, beta_iv->hi) >= 1
                                 : var1->sign_of(k1.eval_at(g, beta_iv->lo)) == 0;
            if (beta_in_g) throw std::domain_error("CtxAlg2::inv: element vanishes at (a, b)");
            // shrink p2 to the cofactor containing b and retry
            auto [q, r] = k1.divmod_rel(*p2, g);
            *p2 = k1.monic_rel(q);
            p2_st->clear();
            e = k1.trim(reduce(e));
        }
    }

    QInterval enclose(const Elem& e, const Rational& width) const {
        // two-variable interval Horner; refine both a and b toward the width
        RelPoly<CtxAlg> k1 = level1();
        for (int i = 0; i < 2; ++i)
            if (!beta_iv->exact() && beta_iv->width() >= width) refine_beta();
        QInterval by{beta_iv->lo, beta_iv->hi};
        QInterval acc = interval_point(Rational(0));
        for (auto it = e.c.rbegin(); it != e.c.rend(); ++it)
            acc = acc * by + var1->enclose(*it, width);
        return acc;
    }
};

}  // namespace qu

#endif
