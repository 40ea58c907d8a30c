/**
 * @file linear.hpp
 * @brief Integer-linear forms, conjunctive linear regions, and exact
 *        Fourier-Motzkin reasoning over the rationals (satisfiability,
 *        bounds of linear objectives).
 */
#ifndef QUNIMODAL_LINEAR_HPP
#define QUNIMODAL_LINEAR_HPP

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace qu {

/// coeff . x + constant over a fixed variable list.
struct LinForm {
    std::vector<Rational> coeff;
    Rational constant;

    explicit LinForm(long nvars = 0) : coeff(nvars, Rational(0)), constant(0) {}

    static LinForm konst(long nvars, const Rational& c) {
        LinForm f(nvars);
        f.constant = c;
        return f;
    }

    static LinForm var(long nvars, long i, const Rational& scale = Rational(1)) {
        LinForm f(nvars);
        f.coeff[i] = scale;
        return f;
    }

    long nvars() const { return static_cast<long>(coeff.size()); }

    bool is_constant() const {
        for (const auto& c : coeff)
            if (c != 0) return false;
        return true;
    }

    Rational evaluate(const std::vector<Rational>& x) const {
        Rational v = constant;
        for (size_t i = 0; i < coeff.size(); ++i) v += coeff[i] * x[i];
        return v;
    }

    Rational evaluate_int(const std::vector<long>& x) const {
        Rational v = constant;
        for (size_t i = 0; i < coeff.size(); ++i) v += coeff[i] * Rational(x[i]);
        return v;
    }

    /// Rewrite every variable: x_i = scale_i * y_i + offset_i (same arity).
    LinForm substitute_affine(const std::vector<Rational>& scale,
                              const std::vector<Rational>& offset) const {
        LinForm out(nvars());
        out.constant = constant;
        for (long i = 0; i < nvars(); ++i) {
            out.coeff[i] = coeff[i] * scale[i];
            out.constant += coeff[i] * offset[i];
        }
        return out;
    }

    /// Normalize to integer coefficients with gcd 1 (sign preserved).
    void normalize() {
        Int lcm_den(1);
        for (const auto& c : coeff) lcm_den = lcm(lcm_den, c.get_den());
        lcm_den = lcm(lcm_den, constant.get_den());
        Int g(0);
        auto scaled = [&](const Rational& c) { return Int(c.get_num() * (lcm_den / c.get_den())); };
        for (const auto& c : coeff) g = gcd(g, scaled(c));
        g = gcd(g, scaled(constant));
        if (g == 0) g = 1;
        Rational factor(lcm_den, g);
        for (auto& c : coeff) c *= factor;
        constant *= factor;
    }

    friend LinForm operator+(const LinForm& a, const LinForm& b) {
        LinForm r = a;
        for (long i = 0; i < r.nvars(); ++i) r.coeff[i] += b.coeff[i];
        r.constant += b.constant;
        return r;
    }
    friend LinForm operator-(const LinForm& a, const LinForm& b) {
        LinForm r = a;
        for (long i = 0; i < r.nvars(); ++i) r.coeff[i] -= b.coeff[i];
        r.constant -= b.constant;
        return r;
    }
    friend LinForm operator*(const Rational& s, const LinForm& a) {
        LinForm r = a;
        for (auto& c : r.coeff) c *= s;
        r.constant *= s;
        return r;
    }
    friend bool operator==(const LinForm& a, const LinForm& b) {
        return a.coeff == b.coeff && a.constant == b.constant;
    }
};

/// form >= 0 (strict = false) or form > 0 (strict = true).
struct LinIneq {
    LinForm form;
    bool strict = false;

    bool satisfied_int(const std::vector<long>& x) const {
        Rational v = form.evaluate_int(x);
        return strict ? v > 0 : v >= 0;
    }
    bool satisfied(const std::vector<Rational>& x) const {
        Rational v = form.evaluate(x);
        return strict ? v > 0 : v >= 0;
    }
};

/// Conjunction of linear inequalities over a fixed variable list.
struct Region {
    std::vector<LinIneq> constraints;

    void add_ge(const LinForm& f) { constraints.push_back({f, false}); }
    void add_gt(const LinForm& f) { constraints.push_back({f, true}); }
    /// a <= b as b - a >= 0
    void add_le(const LinForm& a, const LinForm& b) { add_ge(b - a); }

    bool contains_int(const std::vector<long>& x) const {
        for (const auto& c : constraints)
            if (!c.satisfied_int(x)) return false;
        return true;
    }
    bool contains(const std::vector<Rational>& x) const {
        for (const auto& c : constraints)
            if (!c.satisfied(x)) return false;
        return true;
    }

    void normalize() {
        for (auto& c : constraints) c.form.normalize();
    }
};

namespace fm {

/// Fourier-Motzkin elimination of variable i from a set of inequalities.
inline std::vector<LinIneq> eliminate(const std::vector<LinIneq>& ineqs, long i) {
    std::vector<LinIneq> lower, upper, rest;
    for (const auto& q : ineqs) {
        const Rational& c = q.form.coeff[i];
        if (c > 0) lower.push_back(q);        // x_i >= -(rest)/c
        else if (c < 0) upper.push_back(q);   // x_i <= ...
        else rest.push_back(q);
    }
    for (const auto& lo : lower)
        for (const auto& up : upper) {
            // combine: up.c < 0, lo.c > 0 -> lo.c*up + (-up.c)*lo has zero x_i coeff
            LinForm f = lo.form.coeff[i] * up.form - up.form.coeff[i] * lo.form;
            f.coeff[i] = 0;
            rest.push_back({f, lo.strict || up.strict});
        }
    return rest;
}

/// Rational satisfiability of a conjunction of linear inequalities.
inline bool satisfiable(std::vector<LinIneq> ineqs, long nvars) {
    for (long i = 0; i < nvars; ++i) ineqs = eliminate(ineqs, i);
    for (const auto& q : ineqs) {
        if (q.strict ? !(q.form.constant > 0) : !(q.form.constant >= 0)) return false;
    }
    return true;
}

struct Bound {
    bool feasible = true;
    bool bounded = false;
    Rational value;   // sup (or inf); attainedness not tracked
    bool attained = false;
};

/// Supremum of objective . x + objective constant over the region (rational relaxation).
inline Bound maximize(const Region& region, const LinForm& objective) {
    // introduce t with t <= objective, maximize t
    const long n = objective.nvars();
    std::vector<LinIneq> ineqs;
    for (const auto& c : region.constraints) {
        LinIneq q = c;
        q.form.coeff.push_back(Rational(0));
        ineqs.push_back(q);
    }
    LinForm t_le(n);  // objective - t >= 0
    t_le = objective;
    t_le.coeff.push_back(Rational(-1));
    ineqs.push_back({t_le, false});
    for (long i = 0; i < n; ++i) ineqs = eliminate(ineqs, i);
    Bound b;
    b.bounded = false;
    bool any_upper = false;
    Rational best;
    bool best_strict = false;
    for (const auto& q : ineqs) {
        const Rational& ct = q.form.coeff[n];
        if (ct == 0) {
            if (q.strict ? !(q.form.constant > 0) : !(q.form.constant >= 0)) {
                b.feasible = false;
                return b;
            }
        } else if (ct < 0) {
            Rational bound = q.form.constant / -ct;  // t <= bound (or <)
            if (!any_upper || bound < best || (bound == best && q.strict)) {
                best = bound;
                best_strict = q.strict;
            }
            any_upper = true;
        }
        // ct > 0 gives lower bounds on t; irrelevant for sup
    }
    if (any_upper) {
        b.bounded = true;
        b.value = best;
        b.attained = !best_strict;
    }
    return b;
}

inline Bound minimize(const Region& region, const LinForm& objective) {
    Bound b = maximize(region, Rational(-1) * objective);
    if (b.bounded) b.value = -b.value;
    return b;
}

}  // namespace fm

}  // namespace qu

#endif
