/**
 * @file closed_form.hpp
 * @brief Exponential-polynomial closed forms for Taylor coefficients of
 *        N(q, q^l1, ..., q^ln) / D(q) where D splits into roots of unity.
 *
 * expand_denominator derives d_k = sum_t p_t(k) w^{t k} by an ansatz with
 * undetermined coefficients solved over Q(w). assemble_piecewise folds a
 * symbolic numerator into a piecewise expression for c_k, choosing split
 * points j.l + sigma_j inside the k0-validity slack so that the number of
 * pieces stays small. forward_difference produces the piecewise form of
 * c_{k+1} - c_k on the same region skeleton.
 *
 * Variable convention: variable 0 is k, variables 1..n are the symbolic
 * parameters l_1, ..., l_n.
 */
#ifndef QUNIMODAL_CLOSED_FORM_HPP
#define QUNIMODAL_CLOSED_FORM_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "linear.hpp"
#include "qpoly.hpp"
#include "symbolic_numerator.hpp"

namespace qu {

/// Integer-linear exponent of omega, stored mod L (coefficients and constant in [0, L)).
struct OmegaForm {
    std::vector<long> coeff;  // per variable
    long constant = 0;

    static OmegaForm reduced(std::vector<long> c, long konst, long L) {
        OmegaForm f;
        f.coeff = std::move(c);
        for (auto& x : f.coeff) x = mod_floor(x, L);
        f.constant = mod_floor(konst, L);
        return f;
    }

    long evaluate_mod(const std::vector<long>& x, long L) const {
        long e = constant;
        for (size_t i = 0; i < coeff.size(); ++i) e = mod_floor(e + coeff[i] * mod_floor(x[i], L), L);
        return e;
    }

    bool is_zero() const {
        if (constant != 0) return false;
        for (long c : coeff)
            if (c != 0) return false;
        return true;
    }

    friend bool operator<(const OmegaForm& a, const OmegaForm& b) {
        if (a.coeff != b.coeff) return a.coeff < b.coeff;
        return a.constant < b.constant;
    }
    friend bool operator==(const OmegaForm& a, const OmegaForm& b) {
        return a.coeff == b.coeff && a.constant == b.constant;
    }
};

/// Sparse multivariate polynomial with cyclotomic coefficients.
class MPolyCyc {
public:
    using Exps = std::vector<long>;

    MPolyCyc(long order, long nvars) : order_(order), nvars_(nvars) {}

    static MPolyCyc constant(long order, long nvars, const CycNum& c) {
        MPolyCyc p(order, nvars);
        if (!c.is_zero()) p.terms_[Exps(nvars, 0)] = c;
        return p;
    }

    long order() const { return order_; }
    long nvars() const { return nvars_; }
    const std::map<Exps, CycNum>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exps& e, const CycNum& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MPolyCyc operator+(const MPolyCyc& a, const MPolyCyc& b) {
        MPolyCyc r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend MPolyCyc operator*(const MPolyCyc& a, const MPolyCyc& b) {
        MPolyCyc r(a.order_, a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exps e = ea;
                for (long i = 0; i < a.nvars_; ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    MPolyCyc scaled(const CycNum& s) const {
        MPolyCyc r(order_, nvars_);
        for (const auto& [e, c] : terms_) r.add_term(e, s * c);
        return r;
    }

    CycNum evaluate_int(const std::vector<long>& x) const {
        CycNum acc(order_);
        for (const auto& [e, c] : terms_) {
            Rational mono(1);
            for (long i = 0; i < nvars_; ++i)
                for (long j = 0; j < e[i]; ++j) mono *= Rational(x[i]);
            acc += mono * c;
        }
        return acc;
    }

    friend bool operator==(const MPolyCyc& a, const MPolyCyc& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

private:
    long order_;
    long nvars_;
    std::map<Exps, CycNum> terms_;
};

/// Finite sum of (polynomial) * w^(linear form) terms.
class ExpPolynomial {
public:
    ExpPolynomial(long order, long nvars) : order_(order), nvars_(nvars) {}

    long order() const { return order_; }
    long nvars() const { return nvars_; }
    const std::map<OmegaForm, MPolyCyc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const OmegaForm& w, const MPolyCyc& p) {
        if (p.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, p);
        } else {
            it->second = it->second + p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b) {
        ExpPolynomial r = a;
        for (const auto& [w, p] : b.terms_) r.add_term(w, p);
        return r;
    }

    friend ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b) {
        ExpPolynomial r = a;
        for (const auto& [w, p] : b.terms_) r.add_term(w, p.scaled(CycNum(a.order_, Rational(-1))));
        return r;
    }

    /// Exact value at an integer point; the omega part must vanish.
    Rational evaluate_int(const std::vector<long>& x) const {
        CycNum acc(order_);
        for (const auto& [w, p] : terms_)
            acc += power_of_omega(w.evaluate_mod(x, order_), order_) * p.evaluate_int(x);
        if (!acc.is_rational())
            throw std::logic_error("ExpPolynomial::evaluate_int: nonvanishing omega part");
        return acc.rational_part();
    }

    friend bool operator==(const ExpPolynomial& a, const ExpPolynomial& b) {
        return a.order_ == b.order_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    long order_;
    long nvars_;
    std::map<OmegaForm, MPolyCyc> terms_;
};

/// Closed form for the Taylor coefficients d_k of 1/D(q) (one variable: k).
struct DenomClosedForm {
    std::vector<long> exponents;  // e_1, ..., e_r of D = prod (1 - q^{e_i})
    long order = 1;               // L = lcm(e_i)
    long degree = 0;              // deg D = sum e_i
    long k0 = 0;                  // validity floor 1 - deg D
    ExpPolynomial expr{1, 1};     // in variable k

    Rational evaluate(long k) const { return expr.evaluate_int({k}); }
};

enum class AnsatzVariant {
    TaylorMatch,   // equations at k = 0..deg-1 against Taylor data
    ZeroTail,      // equations at k = 1-deg..0 with d_k = 0 for k < 0
};

/// Closed form for d_k with L = lcm(e_i), solved by ansatz over Q(w).
inline DenomClosedForm expand_denominator(const std::vector<long>& exponents,
                                          AnsatzVariant variant = AnsatzVariant::ZeroTail) {
    if (exponents.empty()) throw std::invalid_argument("expand_denominator: empty exponent list");
    long L = 1, degD = 0;
    for (long e : exponents) {
        if (e < 1) throw std::invalid_argument("expand_denominator: exponents must be >= 1");
        L = std::lcm(L, e);
        degD += e;
    }
    // multiplicity of the root w^t: number of i with L | t*e_i
    std::vector<std::pair<long, long>> roots;  // (t, multiplicity)
    for (long t = 0; t < L; ++t) {
        long mult = 0;
        for (long e : exponents)
            if ((t * e) % L == 0) ++mult;
        if (mult > 0) roots.emplace_back(t, mult);
    }
    // unknowns: coefficient of k^j in p_t, for j < mult(t)
    std::vector<std::pair<long, long>> unknowns;  // (t, j)
    for (auto [t, mult] : roots)
        for (long j = 0; j < mult; ++j) unknowns.emplace_back(t, j);
    if (static_cast<long>(unknowns.size()) != degD)
        throw std::logic_error("expand_denominator: unknown count mismatch");

    std::vector<long> sample_ks(degD);
    std::vector<Rational> rhs_values(degD, Rational(0));
    if (variant == AnsatzVariant::TaylorMatch) {
        auto taylor = taylor_inverse(denominator_product(exponents), degD);
        for (long i = 0; i < degD; ++i) {
            sample_ks[i] = i;
            rhs_values[i] = taylor[i];
        }
    } else {
        for (long i = 0; i < degD; ++i) sample_ks[i] = 1 - degD + i;
        rhs_values[degD - 1] = 1;  // d_0 = 1, d_k = 0 for k < 0
    }

    std::vector<std::vector<CycNum>> A(degD, std::vector<CycNum>(degD, CycNum(L)));
    std::vector<CycNum> b(degD, CycNum(L));
    for (long row = 0; row < degD; ++row) {
        const long k = sample_ks[row];
        for (long col = 0; col < degD; ++col) {
            auto [t, j] = unknowns[col];
            Rational kpow(1);
            for (long x = 0; x < j; ++x) kpow *= Rational(k);
            A[row][col] = kpow * power_of_omega(t * k, L);
        }
        b[row] = CycNum(L, rhs_values[row]);
    }
    std::vector<CycNum> solution;
    try {
        solution = solve_linear_system(std::move(A), std::move(b));
    } catch (const std::domain_error& e) {
        throw std::logic_error(std::string("expand_denominator: ansatz system singular (") +
                               e.what() + ")");
    }

    DenomClosedForm result;
    result.exponents = exponents;
    result.order = L;
    result.degree = degD;
    result.k0 = 1 - degD;
    ExpPolynomial expr(L, 1);
    for (size_t col = 0; col < unknowns.size(); ++col) {
        auto [t, j] = unknowns[col];
        MPolyCyc mono(L, 1);
        mono.add_term({j}, solution[col]);
        expr.add_term(OmegaForm::reduced({t}, 0, L), mono);
    }
    result.expr = std::move(expr);
    return result;
}

/// Memoized variant; the m = 7 system (28 unknowns over Q(w_420)) is costly
/// enough to solve only once per process.
inline const DenomClosedForm& expand_denominator_cached(const std::vector<long>& exponents) {
    static std::mutex mtx;
    static std::map<std::vector<long>, DenomClosedForm> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(exponents);
    if (it == cache.end()) it = cache.emplace(exponents, expand_denominator(exponents)).first;
    return it->second;
}

/// k0 = 1 - deg(D); verifies by evaluation that the closed form vanishes on
/// k0 <= k < 0 and reproduces the Taylor data on 0 <= k < deg(D).
inline long validity_floor(const DenomClosedForm& d) {
    for (long k = d.k0; k < 0; ++k)
        if (d.evaluate(k) != 0)
            throw std::logic_error("validity_floor: closed form nonzero at k = " +
                                   std::to_string(k));
    auto taylor = taylor_inverse(denominator_product(d.exponents), d.degree);
    for (long k = 0; k < d.degree; ++k)
        if (d.evaluate(k) != taylor[k])
            throw std::logic_error("validity_floor: Taylor mismatch at k = " + std::to_string(k));
    return d.k0;
}

// ---------------------------------------------------------------------------
// Piecewise assembly
// ---------------------------------------------------------------------------

/// One piece: a region in (k, params) and the expression valid there.
/// valid_low/valid_high record the extended validity of the expression as
/// bounds on k (k >= every low form, k <= every high form), typically wider
/// than the region.
struct Piece {
    Region region;  // over (k, l_1, ..., l_n)
    ExpPolynomial expr{1, 1};
    std::vector<LinForm> valid_low;   // forms over (k, params) with zero k coefficient
    std::vector<LinForm> valid_high;  // empty = unbounded above
};

struct AssembleSpec {
    SymbolicNumerator numerator{0};
    DenomClosedForm denom;
    Region param_domain;  // over params only (n variables)
    LinForm k_low{0};     // over params; k range is k_low <= k <= k_high
    LinForm k_high{0};
};

struct PiecewiseClosedForm {
    long order = 1;
    long nvars = 1;  // k plus params
    Region domain;   // Omega' over (k, params)
    std::vector<Piece> pieces;
    long k0 = 0;
    bool is_difference = false;
    AssembleSpec spec;  // generating data, kept for forward_difference and caching

    /// Value at an integer point of Omega'; exactly one piece must match.
    Rational evaluate_int(const std::vector<long>& x) const {
        const Piece* found = nullptr;
        for (const auto& p : pieces) {
            if (p.region.contains_int(x)) {
                if (found) throw std::logic_error("PiecewiseClosedForm: overlapping pieces");
                found = &p;
            }
        }
        if (!found) throw std::out_of_range("PiecewiseClosedForm: point outside all pieces");
        return found->expr.evaluate_int(x);
    }

    const Piece* piece_at(const std::vector<long>& x) const {
        for (const auto& p : pieces)
            if (p.region.contains_int(x)) return &p;
        return nullptr;
    }
};

namespace detail {

// numerator group: common parameter weights, list of (shift, gamma)
struct TermGroup {
    std::vector<long> weights;                      // per param
    std::vector<std::pair<long, Rational>> shifts;  // sorted by shift
    long min_shift = 0, max_shift = 0;
    // assembly state
    enum class Kind { AlwaysIn, Plane, Band } kind = Kind::Plane;
    long sigma = 0;  // switch offset: included iff k >= weights.l + sigma
};

// gamma * d_{k - A.l - b} as an ExpPolynomial over (k, params).
inline ExpPolynomial shifted_denom_term(const DenomClosedForm& d, long nvars,
                                        const std::vector<long>& A, long b,
                                        const Rational& gamma) {
    const long L = d.order;
    ExpPolynomial out(L, nvars);
    // linear form k - A.l - b as an MPolyCyc, plus its powers
    MPolyCyc lin(L, nvars);
    {
        std::vector<long> e(nvars, 0);
        e[0] = 1;
        lin.add_term(e, CycNum(L, Rational(1)));
        for (size_t i = 0; i < A.size(); ++i) {
            if (A[i] == 0) continue;
            std::vector<long> el(nvars, 0);
            el[i + 1] = 1;
            lin.add_term(el, CycNum(L, Rational(-A[i])));
        }
        lin.add_term(std::vector<long>(nvars, 0), CycNum(L, Rational(-b)));
    }
    long max_deg = 0;
    for (const auto& [w, p] : d.expr.terms())
        for (const auto& [e, c] : p.terms()) max_deg = std::max(max_deg, e[0]);
    std::vector<MPolyCyc> lin_pow;
    lin_pow.push_back(MPolyCyc::constant(L, nvars, CycNum(L, Rational(1))));
    for (long j = 1; j <= max_deg; ++j) lin_pow.push_back(lin_pow.back() * lin);

    for (const auto& [w, p] : d.expr.terms()) {
        const long t = w.coeff[0];  // exponent form was t * k
        // omega^{t (k - A.l - b)}
        std::vector<long> wc(nvars, 0);
        wc[0] = t;
        for (size_t i = 0; i < A.size(); ++i) wc[i + 1] = -t * A[i];
        OmegaForm wf = OmegaForm::reduced(std::move(wc), -t * b, L);
        MPolyCyc poly(L, nvars);
        for (const auto& [e, c] : p.terms()) {
            MPolyCyc contrib = lin_pow[e[0]].scaled(gamma * c);
            poly = poly + contrib;
        }
        out.add_term(wf, poly);
    }
    return out;
}

inline LinForm lift_param_form(const LinForm& f, long nvars) {
    // param-space form (n vars) -> (k, params) space (n+1 vars)
    LinForm out(nvars);
    out.constant = f.constant;
    for (long i = 0; i < f.nvars(); ++i) out.coeff[i + 1] = f.coeff[i];
    return out;
}

inline Region lift_param_region(const Region& r, long nvars) {
    Region out;
    for (const auto& c : r.constraints) out.constraints.push_back({lift_param_form(c.form, nvars), c.strict});
    return out;
}

inline LinForm group_plane(const TermGroup& g, long nvars, long offset) {
    // k - A.l - offset as a form over (k, params)
    LinForm f(nvars);
    f.coeff[0] = 1;
    for (size_t i = 0; i < g.weights.size(); ++i) f.coeff[i + 1] = Rational(-g.weights[i]);
    f.constant = Rational(-offset);
    return f;
}

}  // namespace detail

/// Piecewise closed form for c_k = sum_i gamma_i d_{k - a_i . l - b_i} over
/// the domain, restricted to k_low <= k <= k_high. Split offsets sigma are
/// chosen greedily inside [max_shift + k0, min_shift], preferring the c-form
/// convention sigma = 0 and monotonicity along the domination order of the
/// exponent groups; groups whose admissible interval is empty fall back to
/// exact per-offset boundary pieces.
inline PiecewiseClosedForm assemble_piecewise(const AssembleSpec& spec) {
    const long n = spec.numerator.n_params();
    const long nvars = n + 1;
    const long L = spec.denom.order;
    const long k0 = spec.denom.k0;

    PiecewiseClosedForm out;
    out.order = L;
    out.nvars = nvars;
    out.k0 = k0;
    out.spec = spec;

    // Omega' = lifted domain /\ k_low <= k <= k_high
    Region omega = detail::lift_param_region(spec.param_domain, nvars);
    {
        LinForm k(nvars);
        k.coeff[0] = 1;
        omega.add_ge(k - detail::lift_param_form(spec.k_low, nvars));   // k >= k_low
        omega.add_ge(detail::lift_param_form(spec.k_high, nvars) - k);  // k <= k_high
    }
    out.domain = omega;

    // group terms by parameter weights
    std::map<std::vector<long>, detail::TermGroup> groups_map;
    for (const auto& t : spec.numerator.terms()) {
        auto& g = groups_map[t.weights];
        g.weights = t.weights;
        g.shifts.emplace_back(t.shift, t.coefficient);
    }
    std::vector<detail::TermGroup> groups;
    for (auto& [w, g] : groups_map) {
        std::sort(g.shifts.begin(), g.shifts.end());
        g.min_shift = g.shifts.front().first;
        g.max_shift = g.shifts.back().first;
        groups.push_back(std::move(g));
    }

    // drop groups that cannot contribute for any k <= k_high in the domain:
    // A.l + min_shift > k_high everywhere
    {
        std::vector<detail::TermGroup> kept;
        for (auto& g : groups) {
            LinForm margin(n);  // A.l + min_shift - k_high over params
            for (long i = 0; i < n; ++i) margin.coeff[i] = Rational(g.weights[i]);
            margin.constant = Rational(g.min_shift);
            margin = margin - spec.k_high;
            auto lo = fm::minimize(spec.param_domain, margin);
            if (!lo.feasible) continue;  // empty domain: nothing contributes anyway
            if (lo.bounded && lo.value > 0) continue;  // group inactive on all of Omega'
            kept.push_back(std::move(g));
        }
        groups = std::move(kept);
    }

    // classify: always-included when k >= A.l + max_shift + k0 holds on Omega'
    for (auto& g : groups) {
        LinForm plane = detail::group_plane(g, nvars, g.max_shift + k0);
        Region test = omega;
        test.add_gt(Rational(-1) * plane);  // exists point with k < A.l + sigma_min ?
        bool can_be_below = fm::satisfiable(test.constraints, nvars);
        if (!can_be_below) g.kind = detail::TermGroup::Kind::AlwaysIn;
    }

    // domination partial order on plane groups; greedy sigma in that order
    std::vector<long> plane_idx;
    for (size_t i = 0; i < groups.size(); ++i)
        if (groups[i].kind != detail::TermGroup::Kind::AlwaysIn) plane_idx.push_back(i);
    auto dominates = [&](const detail::TermGroup& lo, const detail::TermGroup& hi) {
        // lo.A . l <= hi.A . l over the whole domain?
        LinForm diff(n);
        for (long i = 0; i < n; ++i) diff.coeff[i] = Rational(lo.weights[i] - hi.weights[i]);
        auto b = fm::maximize(spec.param_domain, diff);
        return b.feasible && b.bounded && b.value <= 0;
    };
    // topological-ish order: sort by total weight then lexicographic (consistent
    // with domination on nonnegative domains)
    std::sort(plane_idx.begin(), plane_idx.end(), [&](long a, long b) {
        long sa = std::accumulate(groups[a].weights.begin(), groups[a].weights.end(), 0L);
        long sb = std::accumulate(groups[b].weights.begin(), groups[b].weights.end(), 0L);
        if (sa != sb) return sa < sb;
        return groups[a].weights < groups[b].weights;
    });
    for (size_t ii = 0; ii < plane_idx.size(); ++ii) {
        auto& g = groups[plane_idx[ii]];
        long lo = g.max_shift + k0;  // inclusion-safety lower bound
        long hi = g.min_shift;       // exclusion-safety upper bound
        long pref = std::max<long>(0, lo);
        for (size_t jj = 0; jj < ii; ++jj) {
            const auto& p = groups[plane_idx[jj]];
            if (p.kind == detail::TermGroup::Kind::Plane && dominates(p, g))
                pref = std::max(pref, p.sigma);
        }
        long sigma = std::min(pref, hi);
        if (sigma >= lo) {
            g.kind = detail::TermGroup::Kind::Plane;
            g.sigma = sigma;
        } else {
            g.kind = detail::TermGroup::Kind::Band;  // per-offset fallback
            g.sigma = lo;                            // full inclusion from A.l + lo upward
        }
    }

    // enumerate piece cells: DFS over group states
    struct State {
        Region constraints;                                  // over (k, params)
        std::vector<std::pair<long, Rational>> included;     // shifts contributing
    };
    std::vector<std::vector<State>> group_states;
    for (const auto& g : groups) {
        std::vector<State> states;
        if (g.kind == detail::TermGroup::Kind::AlwaysIn) {
            states.push_back({Region{}, g.shifts});
        } else if (g.kind == detail::TermGroup::Kind::Plane) {
            // excluded: k <= A.l + sigma - 1
            State off;
            off.constraints.add_ge(Rational(-1) * detail::group_plane(g, nvars, g.sigma - 1));
            states.push_back(std::move(off));
            State on;
            on.constraints.add_ge(detail::group_plane(g, nvars, g.sigma));
            on.included = g.shifts;
            states.push_back(std::move(on));
        } else {
            // band fallback: excluded below min_shift, exact one-point pieces on
            // [min_shift, sigma-1], fully included from sigma on
            State off;
            off.constraints.add_ge(Rational(-1) * detail::group_plane(g, nvars, g.min_shift - 1));
            states.push_back(std::move(off));
            for (long o = g.min_shift; o < g.sigma; ++o) {
                State band;
                LinForm plane = detail::group_plane(g, nvars, o);
                band.constraints.add_ge(plane);
                band.constraints.add_ge(Rational(-1) * plane);  // k == A.l + o
                for (const auto& s : g.shifts)
                    if (s.first <= o) band.included.push_back(s);
                states.push_back(std::move(band));
            }
            State on;
            on.constraints.add_ge(detail::group_plane(g, nvars, g.sigma));
            on.included = g.shifts;
            states.push_back(std::move(on));
        }
        group_states.push_back(std::move(states));
    }

    std::vector<long> choice(groups.size(), 0);
    std::function<void(size_t, const Region&)> dfs = [&](size_t gi, const Region& sofar) {
        if (!fm::satisfiable(sofar.constraints, nvars)) return;
        if (gi == groups.size()) {
            Piece piece;
            // region: the state constraints only (not the ambient domain),
            // normalized; evaluation intersects with Omega' via the caller.
            for (size_t i = 0; i < groups.size(); ++i)
                for (const auto& c : group_states[i][choice[i]].constraints.constraints)
                    piece.region.constraints.push_back(c);
            // intersect with Omega'
            for (const auto& c : omega.constraints) piece.region.constraints.push_back(c);
            piece.region.normalize();
            ExpPolynomial expr(L, nvars);
            for (size_t i = 0; i < groups.size(); ++i) {
                for (const auto& [b, gamma] : group_states[i][choice[i]].included)
                    expr = expr + detail::shifted_denom_term(spec.denom, nvars, groups[i].weights,
                                                             b, gamma);
            }
            piece.expr = std::move(expr);
            // validity bounds: included groups need k >= A.l + max_shift + k0;
            // excluded plane groups cap validity at k <= A.l + min_shift - 1
            for (size_t i = 0; i < groups.size(); ++i) {
                const auto& st = group_states[i][choice[i]];
                const auto& g = groups[i];
                LinForm Al(nvars);
                for (size_t j = 0; j < g.weights.size(); ++j)
                    Al.coeff[j + 1] = Rational(g.weights[j]);
                if (!st.included.empty()) {
                    LinForm low = Al;
                    low.constant = Rational(st.included.back().first + k0);
                    piece.valid_low.push_back(low);
                }
                long max_in = st.included.empty() ? g.min_shift - 1 : st.included.back().first;
                if (max_in < g.max_shift) {
                    // smallest excluded shift bounds validity above
                    long next_b = g.max_shift;
                    for (const auto& [b, gamma] : g.shifts)
                        if (b > max_in) {
                            next_b = b;
                            break;
                        }
                    LinForm high = Al;
                    high.constant = Rational(next_b - 1);
                    piece.valid_high.push_back(high);
                }
            }
            out.pieces.push_back(std::move(piece));
            return;
        }
        for (size_t s = 0; s < group_states[gi].size(); ++s) {
            choice[gi] = s;
            Region next = sofar;
            for (const auto& c : group_states[gi][s].constraints.constraints)
                next.constraints.push_back(c);
            dfs(gi + 1, next);
        }
    };
    dfs(0, omega);
    return out;
}

/// Piecewise closed form of the forward difference c_{k+1} - c_k, built from
/// the stored generating data. Each numerator term gamma q^{A.l+b} becomes
/// the pair (A, b-1, gamma), (A, b, -gamma); cancellation across neighboring
/// shifts is what keeps the piece skeleton the same size (the extended
/// validity slack of Remark-style k0 bounds absorbs the boundary columns).
inline PiecewiseClosedForm forward_difference(const PiecewiseClosedForm& pw) {
    const auto& spec = pw.spec;
    const long n = spec.numerator.n_params();
    SymbolicNumerator delta(n);
    for (const auto& t : spec.numerator.terms()) {
        delta = delta + SymbolicNumerator::monomial(n, t.coefficient, t.weights, t.shift - 1);
        delta = delta - SymbolicNumerator::monomial(n, t.coefficient, t.weights, t.shift);
    }
    AssembleSpec dspec = spec;
    dspec.numerator = delta;
    dspec.k_high = spec.k_high - LinForm::konst(n, Rational(1));
    PiecewiseClosedForm out = assemble_piecewise(dspec);
    out.is_difference = true;
    return out;
}

}  // namespace qu

#endif
