/**
 * @file exceptions.hpp
 * @brief From failing decision cells to integer exception points and
 *        one-parameter exception families, plus the d-strictness prover
 *        for Gaussian coefficient sequences, margin search, and the
 *        even/odd induction coverage checker.
 *
 * The prover splits the work: parameters below a threshold are scanned by
 * the brute-force oracle, the rest is handled symbolically. A failing
 * residue case is converted to integer points by a bounded sweep certified
 * by a second decision call on the tail region; affine targets instead get
 * a complete polyhedral residue-class analysis that can emit infinite
 * families. Everything is exact.
 */
#ifndef QUNIMODAL_EXCEPTIONS_HPP
#define QUNIMODAL_EXCEPTIONS_HPP

#include <algorithm>
#include <atomic>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cad.hpp"
#include "oracle.hpp"
#include "problems.hpp"
#include "residue.hpp"

namespace qu {

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

struct ExceptionPoint {
    long l = 0;
    long b = 0;
    bool has_b = false;
    long k = 0;

    friend bool operator<(const ExceptionPoint& a, const ExceptionPoint& b) {
        return std::tie(a.l, a.b, a.k) < std::tie(b.l, b.b, b.k);
    }
    friend bool operator==(const ExceptionPoint& a, const ExceptionPoint& b) {
        return std::tie(a.l, a.b, a.k, a.has_b) == std::tie(b.l, b.b, b.k, b.has_b);
    }
};

/// (k, l) = (k_step j + k_off, l_step j + l_off) for all integers j >= 0.
struct ExceptionFamily {
    long l_step = 0, l_off = 0;
    long k_step = 0, k_off = 0;

    friend bool operator<(const ExceptionFamily& a, const ExceptionFamily& b) {
        return std::tie(a.l_step, a.l_off, a.k_step, a.k_off) <
               std::tie(b.l_step, b.l_off, b.k_step, b.k_off);
    }
    friend bool operator==(const ExceptionFamily& a, const ExceptionFamily& b) {
        return std::tie(a.l_step, a.l_off, a.k_step, a.k_off) ==
               std::tie(b.l_step, b.l_off, b.k_step, b.k_off);
    }
};

struct UnresolvedRecord {
    std::vector<long> residues;
    long piece = 0;
    std::string note;
};

struct ProofReport {
    long m = 0, d = 0;
    long L_margin = 0, U_margin = 0;
    long order = 0;            // L = lcm(1..m)
    long threshold = 0;        // oracle/symbolic split in l
    std::vector<long> moduli;  // per variable (k first)
    std::vector<ExceptionPoint> points;
    std::vector<ExceptionFamily> families;
    std::vector<UnresolvedRecord> unresolved;
    long cases_total = 0;   // residue cases x pieces
    long cases_failed = 0;  // case-pieces with a failing cell
    bool complete = true;   // no unresolved records

    std::vector<long> exceptional_l() const {
        std::set<long> s;
        for (const auto& p : points) s.insert(p.l);
        return {s.begin(), s.end()};
    }
};

struct ProveOptions {
    ModulusMode mode = ModulusMode::FullOrder;
    long threshold = -1;   // -1: default 3L/m
    long sweep_cap = 64;   // max primed-variable tail start for certification
    long case_begin = 0;   // slice of residue-case indices
    long case_end = -1;    // -1: all
    int threads = 0;       // 0: hardware concurrency
};

// ---------------------------------------------------------------------------
// Integer analysis of a failing case-piece
// ---------------------------------------------------------------------------

namespace exc_detail {

/// Affine MPolyQ -> LinForm; nullopt if any term has total degree > 1.
inline std::optional<LinForm> as_linform(const MPolyQ& p) {
    LinForm f(p.nvars);
    for (const auto& [e, c] : p.terms) {
        long deg = 0, var = -1;
        for (size_t v = 0; v < e.size(); ++v) {
            deg += e[v];
            if (e[v] == 1) var = static_cast<long>(v);
        }
        if (deg == 0)
            f.constant += c;
        else if (deg == 1)
            f.coeff[var] += c;
        else
            return std::nullopt;
    }
    return f;
}

/// Integer k' range satisfying a k'-linear constraint at a fixed l'.
/// Returns false if the constraint excludes every k'.
struct KBound {
    bool has_lo = false, has_hi = false;
    Int lo = 0, hi = 0;
};

inline Int ceil_int(const Rational& r, bool strict) {
    Int q = r.get_num() / r.get_den();  // truncates toward zero
    bool exact = r.get_num() % r.get_den() == 0;
    if (!exact && r > 0) q += 1;
    if (strict && exact) q += 1;
    return q;
}

inline Int floor_int(const Rational& r, bool strict) {
    Int q = r.get_num() / r.get_den();
    bool exact = r.get_num() % r.get_den() == 0;
    if (r < 0 && !exact) q -= 1;
    if (strict && exact) q -= 1;
    return q;
}

/// The parameters of one prover run needed to interpret primed points.
struct BackMap {
    long M_k, kappa, M_l, lambda;
    long l_of(long lp) const { return M_l * lp + lambda; }
    long k_of(long kp) const { return M_k * kp + kappa; }
};

/// Enumerate integer (k', l') in the polyhedron given by `cons` for
/// l' in [l_lo, l_hi]; emit via callback(kp, lp).
template <typename F>
void enumerate_lattice(const std::vector<LinIneq>& cons, long l_lo, long l_hi, F&& emit) {
    for (long lp = l_lo; lp <= l_hi; ++lp) {
        bool feasible = true;
        std::optional<Int> klo, khi;
        for (const auto& c : cons) {
            Rational a = c.form.coeff[0];
            Rational rest = c.form.coeff[1] * Rational(lp) + c.form.constant;
            if (a == 0) {
                if (c.strict ? !(rest > 0) : !(rest >= 0)) {
                    feasible = false;
                    break;
                }
            } else if (a > 0) {
                // k' >= -rest/a
                Int b = ceil_int(-rest / a, c.strict);
                if (!klo || b > *klo) klo = b;
            } else {
                Int b = floor_int(rest / -a, c.strict);
                if (!khi || b < *khi) khi = b;
            }
        }
        if (!feasible || !klo || !khi) continue;
        for (Int kp = *klo; kp <= *khi; ++kp) emit(kp.get_si(), lp);
    }
}

/// Complete integer analysis of { constraints } U { target < 0 } when the
/// target is affine: points for the bounded head, residue-class families
/// for an unbounded constant-width tail. Returns false when the violation
/// strip widens without bound (caller records Unresolved).
inline bool polyhedral_exceptions(const LinForm& target, const Region& reg, const BackMap& bm,
                                  const std::function<bool(long k, long l)>& genuine,
                                  std::set<ExceptionPoint>& points,
                                  std::set<ExceptionFamily>& families) {
    std::vector<LinIneq> cons = reg.constraints;
    cons.push_back({Rational(-1) * target, true});  // target < 0

    Region all;
    all.constraints = cons;
    LinForm lvar = LinForm::var(2, 1);
    auto lo_b = fm::minimize(all, lvar);
    if (!lo_b.feasible) return true;
    long l_lo = lo_b.bounded ? ceil_int(lo_b.value, false).get_si() : 0;

    auto add_point = [&](long kp, long lp) {
        long k = bm.k_of(kp), l = bm.l_of(lp);
        if (genuine(k, l)) points.insert({l, 0, false, k});
    };

    auto hi_b = fm::maximize(all, lvar);
    if (hi_b.bounded) {
        enumerate_lattice(cons, l_lo, floor_int(hi_b.value, false).get_si(), add_point);
        return true;
    }

    // Unbounded tail: find the eventually-binding lower/upper bound pair on k'.
    struct Aff {
        Rational slope, off;
        bool strict;
    };
    std::vector<Aff> lowers, uppers;
    std::vector<Aff> pure;  // constraints on l' alone: slope*l' + off >= 0
    for (const auto& c : cons) {
        Rational a = c.form.coeff[0];
        if (a == 0)
            pure.push_back({c.form.coeff[1], c.form.constant, c.strict});
        else if (a > 0)
            lowers.push_back({-c.form.coeff[1] / a, -c.form.constant / a, c.strict});
        else
            uppers.push_back({c.form.coeff[1] / -a, c.form.constant / -a, c.strict});
    }
    if (lowers.empty() || uppers.empty()) return false;  // k' unbounded: not a strip
    auto binding_lo = *std::max_element(lowers.begin(), lowers.end(), [](const Aff& x, const Aff& y) {
        return std::tie(x.slope, x.off) < std::tie(y.slope, y.off);
    });
    auto binding_hi = *std::min_element(uppers.begin(), uppers.end(), [](const Aff& x, const Aff& y) {
        return std::tie(x.slope, x.off) < std::tie(y.slope, y.off);
    });
    if (binding_hi.slope > binding_lo.slope) return false;  // widening strip
    if (binding_hi.slope < binding_lo.slope) {
        // strip closes: l' is effectively bounded by the crossover
        Rational cross = (binding_lo.off - binding_hi.off) / (binding_hi.slope - binding_lo.slope);
        enumerate_lattice(cons, l_lo, floor_int(cross, false).get_si(), add_point);
        return true;
    }

    // Constant width: all bound pairs stop crossing after E; pure constraints
    // with negative slope would bound l' (handled above by fm), so they only
    // set lower thresholds here.
    Rational alpha = binding_lo.slope;
    Rational E(l_lo);
    auto cross_with = [&](const Aff& a, const Aff& b) {
        if (a.slope == b.slope) return;
        Rational c = (b.off - a.off) / (a.slope - b.slope);
        if (c > E) E = c;
    };
    for (const auto& a : lowers) cross_with(a, binding_lo);
    for (const auto& a : uppers) cross_with(a, binding_hi);
    for (const auto& p : pure) {
        if (p.slope == 0) {
            if (p.strict ? !(p.off > 0) : !(p.off >= 0)) return true;  // infeasible
        } else {
            Rational c = -p.off / p.slope;
            if (c > E) E = c;
        }
    }
    long D = static_cast<long>(alpha.get_den().get_si());
    long head_end = floor_int(E, false).get_si() + D;  // points up to here
    enumerate_lattice(cons, l_lo, head_end, add_point);

    long s = Rational(alpha * D).get_num().get_si();  // integer k'-step per period
    for (long rho = 0; rho < D; ++rho) {
        // offsets t with s j + t inside the strip for l' = D j + rho
        Rational w_lo = alpha * rho + binding_lo.off;
        Rational w_hi = alpha * rho + binding_hi.off;
        Int t0 = ceil_int(w_lo, binding_lo.strict);
        Int t1 = floor_int(w_hi, binding_hi.strict);
        for (Int t = t0; t <= t1; ++t) {
            long j0 = (head_end - rho) / D + 1;
            while (D * j0 + rho <= head_end) ++j0;
            // pull earlier lattice points into the family so its offset is
            // the true first member
            auto member = [&](long j) {
                long lp = D * j + rho, kp = s * j + t.get_si();
                std::vector<long> pt{kp, lp};
                bool in = true;
                for (const auto& c : cons)
                    if (!c.satisfied_int(pt)) {
                        in = false;
                        break;
                    }
                return in && genuine(bm.k_of(kp), bm.l_of(lp));
            };
            while (j0 > 0 && member(j0 - 1)) {
                --j0;
                points.erase({bm.l_of(D * j0 + rho), 0, false, bm.k_of(s * j0 + t.get_si())});
            }
            ExceptionFamily fam;
            fam.l_step = bm.M_l * D;
            fam.l_off = bm.l_of(D * j0 + rho);
            fam.k_step = bm.M_k * s;
            fam.k_off = bm.k_of(s * j0 + t.get_si());
            families.insert(fam);
        }
    }
    return true;
}

/// Drop duplicate and implied linear constraints; every removed constraint
/// leaves the feasible set unchanged, so downstream analyses are unaffected
/// while the decomposition sees a smaller projection set.
inline Region prune_region(const Region& r) {
    std::vector<LinIneq> cs;
    for (const auto& c : r.constraints) {
        bool dup = false;
        for (const auto& k : cs)
            if (k.strict == c.strict && k.form.coeff == c.form.coeff &&
                k.form.constant == c.form.constant) {
                dup = true;
                break;
            }
        if (!dup) cs.push_back(c);
    }
    Region out;
    for (size_t i = 0; i < cs.size(); ++i) {
        Region rest;
        rest.constraints = out.constraints;
        for (size_t j = i + 1; j < cs.size(); ++j) rest.constraints.push_back(cs[j]);
        auto b = fm::minimize(rest, cs[i].form);
        bool redundant =
            b.feasible && b.bounded && (cs[i].strict ? b.value > 0 : b.value >= 0);
        if (!redundant) out.constraints.push_back(cs[i]);
    }
    return out;
}

/// Cheap sufficient positivity certificate: shift coordinates to the
/// lower-left corner of the region's bounding quadrant; if every
/// coefficient of the shifted polynomial is nonnegative, the polynomial is
/// nonnegative on the whole region.
inline bool quadrant_dominant(const MPolyQ& t, const Region& r) {
    const long n = t.nvars;
    std::vector<MPolyQ> shifts;
    for (long v = 0; v < n; ++v) {
        auto b = fm::minimize(r, LinForm::var(n, v));
        if (!b.feasible) return true;  // empty region
        if (!b.bounded) return false;
        shifts.push_back(MPolyQ::variable(n, v) + MPolyQ::constant(n, b.value));
    }
    MPolyQ shifted(n);
    for (const auto& [e, c] : t.terms) {
        MPolyQ mono = MPolyQ::constant(n, c);
        for (long v = 0; v < n; ++v)
            for (long i = 0; i < e[v]; ++i) mono = mono * shifts[v];
        shifted = shifted + mono;
    }
    for (const auto& [e, c] : shifted.terms)
        if (c < 0) return false;
    return true;
}

/// Decide u >= 0 on [lo, hi] (hi ignored when has_hi is false) by sampling
/// one point in every maximal root-free segment.
inline bool nonneg_on_interval(const QPoly& u, const Rational& lo, bool has_hi,
                               const Rational& hi) {
    if (u.is_zero()) return true;
    if (!has_hi && u.c.back() < 0) return false;
    std::vector<Rational> samples{lo};
    if (has_hi) samples.push_back(hi);
    auto ivs = isolate_real_roots(u);
    for (size_t i = 0; i < ivs.size(); ++i) {
        Rational prev = i ? ivs[i - 1].hi : Rational(lo - 1);
        Rational next = i + 1 < ivs.size() ? ivs[i + 1].lo
                                           : (has_hi ? Rational(hi + 1) : Rational(ivs[i].hi + 1));
        Rational s1 = (prev + ivs[i].lo) / 2;  // just below the root
        Rational s2 = (ivs[i].hi + next) / 2;  // just above the root
        for (const Rational& s : {s1, s2})
            if (s >= lo && (!has_hi || s <= hi)) samples.push_back(s);
    }
    for (const auto& s : samples)
        if (evaluate_q(u, s) < 0) return false;
    return true;
}

/// Exact nonnegativity over the region for a target that involves only one
/// variable: the Fourier-Motzkin shadow of the region onto that variable is
/// exact, so a univariate check is decisive.
inline bool nonneg_univariate(const MPolyQ& t, const Region& r, long var) {
    long d = t.degree_in(var);
    std::vector<Rational> c(d + 1, Rational(0));
    for (const auto& [e, v] : t.terms) c[e[var]] = v;
    QPoly u(std::move(c));
    auto lob = fm::minimize(r, LinForm::var(t.nvars, var));
    if (!lob.feasible) return true;
    auto hib = fm::maximize(r, LinForm::var(t.nvars, var));
    Rational lo = lob.bounded ? lob.value : Rational(0);  // vars are >= 0 in-region
    return nonneg_on_interval(u, lo, hib.bounded, hib.bounded ? hib.value : Rational(0));
}

inline long egcd_long(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long x1, y1;
    long g = egcd_long(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// Restriction of a bivariate polynomial to the integer line
/// (k', l') = (ks j + k0, ls j + l0) as a univariate polynomial in j.
inline QPoly restrict_line(const MPolyQ& p, long k0, long ks, long l0, long ls) {
    QPoly res;
    QPoly kp(std::vector<Rational>{Rational(k0), Rational(ks)});
    QPoly lp(std::vector<Rational>{Rational(l0), Rational(ls)});
    for (const auto& [e, c] : p.terms) {
        QPoly t(std::vector<Rational>{c});
        for (long i = 0; i < e[0]; ++i) t = t * kp;
        for (long i = 0; i < e[1]; ++i) t = t * lp;
        res = res + t;
    }
    return res;
}

}  // namespace exc_detail

// ---------------------------------------------------------------------------
// The d-strictness prover for Gaussian coefficient sequences
// ---------------------------------------------------------------------------

inline ProofReport prove_d_strict(long m, long d, long L_margin, long U_margin,
                                  ProveOptions opts = {}) {
    if (m < 2) throw std::invalid_argument("prove_d_strict: m >= 2 required");
    if (d < 1) throw std::invalid_argument("prove_d_strict: d >= 1 required");
    if (L_margin < 0 || U_margin < 0)
        throw std::invalid_argument("prove_d_strict: margins must be nonnegative");

    const PiecewiseClosedForm& dw = gaussian_delta_piecewise(m);
    const long L = dw.order;

    ProofReport rep;
    rep.m = m;
    rep.d = d;
    rep.L_margin = L_margin;
    rep.U_margin = U_margin;
    rep.order = L;
    rep.threshold = opts.threshold >= 0 ? opts.threshold : 3 * L / m;
    rep.moduli = effective_moduli(dw, opts.mode);

    auto genuine = [&](long k, long l) {
        // exact window membership in the original variables
        return l >= 0 && k >= L_margin && k <= m * l / 2 - 1 - U_margin;
    };

    std::set<ExceptionPoint> points;
    std::set<ExceptionFamily> families;
    std::vector<UnresolvedRecord> unresolved;

    // small parameters: brute-force oracle scan
    for (long l = 0; l < rep.threshold; ++l) {
        auto table = gaussian_coefficients(l, m);
        long hi = m * l / 2 - 1 - U_margin;
        if (hi < L_margin) continue;
        for (long k : scan_d_strict(table, d, L_margin, hi)) points.insert({l, 0, false, k});
    }

    // symbolic complement
    ResidueEnumeration en{rep.moduli};
    const long M_k = rep.moduli[0], M_l = rep.moduli[1];
    const long total = en.total();
    const long begin = std::clamp(opts.case_begin, 0L, total);
    const long end = opts.case_end < 0 ? total : std::clamp(opts.case_end, begin, total);
    rep.cases_total = (end - begin) * static_cast<long>(dw.pieces.size());

    struct CaseResult {
        std::set<ExceptionPoint> points;
        std::set<ExceptionFamily> families;
        std::vector<UnresolvedRecord> unresolved;
        long failed = 0;
    };
    std::vector<CaseResult> results(end - begin);
    std::atomic<long> next{begin};

    auto run_case = [&](long index, CaseResult& out) {
        auto residues = en.residues_of(index);
        const long kappa = residues[0], lambda = residues[1];
        exc_detail::BackMap bm{M_k, kappa, M_l, lambda};
        auto rc = reduce_case(dw, rep.moduli, residues);

        // exact midpoint window: with full-order moduli m*l has fixed parity
        const bool exact_parity = (m * M_l) % 2 == 0;
        const long par = exact_parity ? (m * lambda) % 2 : 0;

        for (size_t pi = 0; pi < rc.pieces.size(); ++pi) {
            const auto& piece = rc.pieces[pi];
            Region reg = piece.region;
            for (const auto& c : rc.domain.constraints) reg.constraints.push_back(c);
            // window and nonnegativity in the primed variables
            reg.add_ge(LinForm::var(2, 0, Rational(M_k)) +
                       LinForm::konst(2, Rational(kappa - L_margin)));
            {
                LinForm w(2);
                w.coeff[0] = Rational(-M_k);
                w.coeff[1] = make_rational(m * M_l, 2);
                w.constant = make_rational(m * lambda - par, 2) - Rational(1 + U_margin + kappa);
                reg.add_ge(w);  // k <= floor(m l / 2) - 1 - U (exact when parity fixed)
            }
            reg.add_ge(LinForm::var(2, 1, Rational(M_l)) +
                       LinForm::konst(2, Rational(lambda - rep.threshold)));
            reg.add_ge(LinForm::var(2, 0));
            reg.add_ge(LinForm::var(2, 1));
            if (!fm::satisfiable(reg.constraints, 2)) continue;
            reg = exc_detail::prune_region(reg);

            MPolyQ target = piece.poly + MPolyQ::constant(2, Rational(-d));
            const std::vector<long> perm{1, 0};  // CAD base = l', main = k'
            // decide nonnegativity of target over a subregion: exact
            // univariate analysis when only one variable occurs, then the
            // cheap dominance certificate, then the full decomposition
            auto prove_on = [&](const Region& r) -> bool {
                if (!fm::satisfiable(r.constraints, 2)) return true;
                if (target.degree_in(1) == 0) return exc_detail::nonneg_univariate(target, r, 0);
                if (target.degree_in(0) == 0) return exc_detail::nonneg_univariate(target, r, 1);
                if (exc_detail::quadrant_dominant(target, r)) return true;
                return cad_prove_nonneg(permute_vars(target, perm), permute_region(r, perm), 2)
                    .proven;
            };
            if (prove_on(reg)) continue;
            const size_t p0 = out.points.size(), f0 = out.families.size(),
                         u0 = out.unresolved.size();
            auto note_failure = [&] {
                if (out.points.size() > p0 || out.families.size() > f0 ||
                    out.unresolved.size() > u0)
                    ++out.failed;
            };

            auto lin = exc_detail::as_linform(target);
            if (lin) {
                if (!exact_parity)
                    out.unresolved.push_back({residues, static_cast<long>(pi),
                                              "family analysis requires fixed midpoint parity"});
                else if (!exc_detail::polyhedral_exceptions(*lin, reg, bm, genuine, out.points,
                                                            out.families))
                    out.unresolved.push_back(
                        {residues, static_cast<long>(pi), "violation strip is not constant-width"});
                note_failure();
                continue;
            }

            // Nonlinear target: the real relaxation can stay negative in a
            // thin sliver along a window edge where no lattice point ever
            // lies, so a plain tail certificate never exists. Instead
            // certify the window minus bands of width T at both edges by
            // CAD, then analyze the integer edge offsets exactly: each
            // offset is a lattice line, and the target restricted to it is
            // univariate.
            long T_ok = -1;
            if (exact_parity) {
                for (long T = 1; T <= 64; T *= 2) {
                    Region core = reg;
                    LinForm band(2);
                    band.coeff[0] = Rational(-M_k);
                    band.coeff[1] = make_rational(m * M_l, 2);
                    band.constant =
                        make_rational(m * lambda - par, 2) - Rational(1 + U_margin + kappa + T);
                    core.add_ge(band);  // k <= floor(m l / 2) - 1 - U - T
                    core.add_ge(LinForm::var(2, 0, Rational(M_k)) +
                                LinForm::konst(2, Rational(kappa - L_margin - T)));  // k >= L + T
                    if (prove_on(core)) {
                        T_ok = T;
                        break;
                    }
                }
            }
            bool edge_done = T_ok > 0;
            // Exact analysis of the lattice line (k', l') = (ks j + k0, ls j + l0)
            // within reg: enumerate violations inside the root hull, emit a
            // residue-class family when the restriction is eventually negative.
            auto analyze_line = [&](long k0, long ks, long l0, long ls) -> bool {
                bool feasible = true, has_lo = false, has_hi = false;
                Int j_lo(0), j_hi(0);
                for (const auto& c : reg.constraints) {
                    Rational sig = c.form.coeff[0] * ks + c.form.coeff[1] * ls;
                    Rational tau = c.form.coeff[0] * k0 + c.form.coeff[1] * l0 + c.form.constant;
                    if (sig == 0) {
                        if (c.strict ? !(tau > 0) : !(tau >= 0)) {
                            feasible = false;
                            break;
                        }
                    } else if (sig > 0) {
                        Int b = exc_detail::ceil_int(-tau / sig, c.strict);
                        if (!has_lo || b > j_lo) j_lo = b;
                        has_lo = true;
                    } else {
                        Int b = exc_detail::floor_int(tau / -sig, c.strict);
                        if (!has_hi || b < j_hi) j_hi = b;
                        has_hi = true;
                    }
                }
                if (!feasible || (has_lo && has_hi && j_hi < j_lo)) return true;
                if (!has_lo) return false;
                QPoly u = exc_detail::restrict_line(target, k0, ks, l0, ls);
                u.trim();
                if (u.is_zero()) return true;  // target vanishes on the line: >= 0 holds
                auto k_of_j = [&](long j) { return bm.k_of(ks * j + k0); };
                auto l_of_j = [&](long j) { return bm.l_of(ls * j + l0); };
                // all sign changes of u happen inside the root hull
                Int roots_end = j_lo - 1;
                for (const auto& iv : isolate_real_roots(u)) {
                    Int e = exc_detail::floor_int(iv.hi, false) + 1;
                    if (e > roots_end) roots_end = e;
                }
                Int sweep_hi = roots_end;
                if (has_hi && j_hi < sweep_hi) sweep_hi = j_hi;
                for (Int j = j_lo; j <= sweep_hi; ++j) {
                    long jj = j.get_si();
                    if (evaluate_q(u, Rational(jj)) < 0 && genuine(k_of_j(jj), l_of_j(jj)))
                        out.points.insert({l_of_j(jj), 0, false, k_of_j(jj)});
                }
                if (u.c.back() < 0) {
                    // eventually negative along the line
                    if (has_hi) {
                        if (j_hi - roots_end > 100000) return false;
                        for (Int j = roots_end + 1; j <= j_hi; ++j) {
                            long jj = j.get_si();
                            if (genuine(k_of_j(jj), l_of_j(jj)))
                                out.points.insert({l_of_j(jj), 0, false, k_of_j(jj)});
                        }
                    } else {
                        Int j0i = roots_end + 1;
                        if (j_lo > j0i) j0i = j_lo;
                        long j0 = j0i.get_si();
                        // pull earlier violations into the family so its
                        // offset is the true first member
                        auto member = [&](long j) {
                            return Int(j) >= j_lo && evaluate_q(u, Rational(j)) < 0 &&
                                   genuine(k_of_j(j), l_of_j(j));
                        };
                        while (j0 > 0 && member(j0 - 1)) {
                            --j0;
                            out.points.erase({l_of_j(j0), 0, false, k_of_j(j0)});
                        }
                        ExceptionFamily fam;
                        fam.l_step = M_l * ls;
                        fam.l_off = l_of_j(j0);
                        fam.k_step = M_k * ks;
                        fam.k_off = k_of_j(j0);
                        out.families.insert(fam);
                    }
                }
                return true;
            };
            if (edge_done) {
                const long A = m * M_l, D = 2 * M_k;
                for (long t = 0; t < T_ok && edge_done; ++t) {
                    // upper edge, offset t:
                    //   M_k k' + kappa = (m (M_l l' + lambda) - par)/2 - 1 - U - t
                    long B = m * lambda - par - 2 * (1 + U_margin + t) - 2 * kappa;
                    long x, y;
                    long g = exc_detail::egcd_long(A, D, x, y);
                    if (((B % g) + g) % g != 0) continue;  // offset holds no lattice points
                    const long P = D / g, A1 = A / g, B1 = B / g;
                    long inv, dummy;
                    exc_detail::egcd_long(((A1 % P) + P) % P, P, inv, dummy);
                    const long l0 = ((((-B1) % P) * (inv % P)) % P + P) % P;
                    const long k0 = (A * l0 + B) / D;
                    if (!analyze_line(k0, A1, l0, P)) edge_done = false;
                }
                for (long t = 0; t < T_ok && edge_done; ++t) {
                    // lower edge, offset t: M_k k' + kappa = L + t, l' free
                    long num = L_margin + t - kappa;
                    if (mod_floor(Int(num), Int(M_k)) != 0) continue;
                    if (!analyze_line(num / M_k, 0, 0, 1)) edge_done = false;
                }
            }
            if (!edge_done) {
                // fall back to a bounded sweep; the case stays unresolved
                LinForm lvar = LinForm::var(2, 1);
                Region all = reg;
                auto lo_b = fm::minimize(all, lvar);
                long l_lo = lo_b.bounded ? exc_detail::ceil_int(lo_b.value, false).get_si() : 0;
                exc_detail::enumerate_lattice(
                    reg.constraints, l_lo, opts.sweep_cap, [&](long kp, long lp) {
                        if (target.evaluate_int({kp, lp}) < 0) {
                            long k = bm.k_of(kp), l = bm.l_of(lp);
                            if (genuine(k, l)) out.points.insert({l, 0, false, k});
                        }
                    });
                out.unresolved.push_back({residues, static_cast<long>(pi),
                                          "edge band not certified below width cap"});
            }
            note_failure();
        }
    };

    int nthreads = opts.threads > 0 ? opts.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
    if (nthreads <= 1 || end - begin <= 1) {
        for (long i = begin; i < end; ++i) run_case(i, results[i - begin]);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (long i; (i = next.fetch_add(1)) < end;) run_case(i, results[i - begin]);
            });
        for (auto& th : pool) th.join();
    }

    for (auto& r : results) {
        rep.cases_failed += r.failed;
        points.insert(r.points.begin(), r.points.end());
        families.insert(r.families.begin(), r.families.end());
        for (auto& u : r.unresolved) unresolved.push_back(std::move(u));
    }

    // drop points covered by a family (case analysis can duplicate members)
    for (const auto& f : families)
        for (auto it = points.begin(); it != points.end();) {
            long dl = it->l - f.l_off;
            if (f.l_step > 0 && dl >= 0 && dl % f.l_step == 0 &&
                it->k == f.k_off + f.k_step * (dl / f.l_step))
                it = points.erase(it);
            else
                ++it;
        }

    rep.points.assign(points.begin(), points.end());
    rep.families.assign(families.begin(), families.end());
    rep.unresolved = std::move(unresolved);
    rep.complete = rep.unresolved.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Margin search
// ---------------------------------------------------------------------------

struct MarginSearchResult {
    long L_margin = -1, U_margin = -1;
    bool found = false;
    ProofReport report;  // for the returned margins
};

/// Smallest margins (lexicographic in L+U, then L) for which the exception
/// set is finite. An oracle sweep filters candidates cheaply (a margin pair
/// whose violations persist at large l cannot be finite); the survivor is
/// confirmed by a full symbolic proof.
inline MarginSearchResult margin_search(long m, long d, long sum_cap = 40,
                                        ProveOptions opts = {}) {
    const long S = 160;  // oracle sweep horizon
    std::vector<CoefficientTable> tables;
    tables.reserve(S + 1);
    for (long l = 0; l <= S; ++l) tables.push_back(gaussian_coefficients(l, m));

    auto oracle_finite = [&](long Lm, long Um) {
        for (long l = S / 2; l <= S; ++l) {
            long hi = m * l / 2 - 1 - Um;
            if (hi < Lm) continue;
            if (!scan_d_strict(tables[l], d, Lm, hi).empty()) return false;
        }
        return true;
    };

    MarginSearchResult res;
    for (long s = 0; s <= sum_cap; ++s)
        for (long Lm = 0; Lm <= s; ++Lm) {
            long Um = s - Lm;
            if (!oracle_finite(Lm, Um)) continue;
            auto rep = prove_d_strict(m, d, Lm, Um, opts);
            if (rep.families.empty() && rep.complete) {
                res.L_margin = Lm;
                res.U_margin = Um;
                res.found = true;
                res.report = std::move(rep);
                return res;
            }
        }
    return res;
}

// ---------------------------------------------------------------------------
// Induction coverage (even n_d scheme)
// ---------------------------------------------------------------------------

struct InductionCell {
    long l = 0, m = 0;
    bool covered = false;
    bool base = false;
    long cond_lhs = 0, cond_rhs = 0;  // floor((l+1)(m-1)/2) vs L(d) + (l or m)
};

struct CoverageReport {
    long n_d = 0, d = 0, bound = 0;
    std::vector<InductionCell> cells;  // pairs with l > m, l+m odd, m > n_d
    bool all_covered = true;
};

/// Marks the pairs (l, m) with l, m > n_d and l+m odd that follow from the
/// base rows m = n_d and m = n_d - 1 by peak-aligned steps (direct for even
/// l, mirrored for even m) combined with the early-coefficient step, each
/// gated by the arithmetic condition floor((l+1)(m-1)/2) >= L(d) + l (or m).
inline CoverageReport induction_coverage(long n_d, long d, long bound) {
    if (n_d % 2 != 0) throw std::invalid_argument("induction_coverage: n_d must be even");
    if (n_d <= L_of_d(d)) throw std::invalid_argument("induction_coverage: need n_d > L(d)");
    const long Ld = L_of_d(d);

    CoverageReport rep;
    rep.n_d = n_d;
    rep.d = d;
    rep.bound = bound;

    std::map<std::pair<long, long>, bool> covered;
    auto is_covered = [&](long l, long mm) {
        if (l < mm) std::swap(l, mm);
        if (mm == n_d || mm == n_d - 1) return true;  // base assumption rows
        auto it = covered.find({l, mm});
        return it != covered.end() && it->second;
    };

    // each row must be established for every l before the next row uses it
    // through the early-coefficient step at (l+1, m-1), so compute rows on
    // an extended range and report only pairs within the requested bound
    const long l_ext = bound + std::max(bound - n_d, 0L);
    for (long mm = n_d + 1; mm <= bound; ++mm)
        for (long l = mm + 1; l <= l_ext; ++l) {
            if ((l + mm) % 2 == 0) continue;
            InductionCell cell;
            cell.l = l;
            cell.m = mm;
            cell.cond_lhs = (l + 1) * (mm - 1) / 2;
            bool peak_ok, early_ok;
            if (l % 2 == 0) {
                cell.cond_rhs = Ld + l;  // direct peak-aligned step
                peak_ok = is_covered(l, mm - 2);
            } else {
                cell.cond_rhs = Ld + mm;  // mirrored step
                peak_ok = is_covered(l - 2, mm);
            }
            early_ok = is_covered(l + 1, mm - 1);
            cell.covered = peak_ok && early_ok && cell.cond_lhs >= cell.cond_rhs;
            covered[{l, mm}] = cell.covered;
            if (l > bound) continue;
            if (!cell.covered) rep.all_covered = false;
            rep.cells.push_back(cell);
        }
    return rep;
}

}  // namespace qu

#endif
