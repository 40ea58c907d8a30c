/**
 * @file cad.hpp
 * @brief Cylindrical algebraic decomposition in up to three variables.
 *
 * Projection collects coefficients, discriminant-style subresultant data of
 * (f, f'), and pairwise subresultant data — the McCallum set by default; the
 * Collins option additionally keeps every principal subresultant coefficient
 * of the chains. Lifting works uniformly over the dynamic algebraic tower
 * (rational samples are degree-one towers), isolating the roots of the
 * product of the lifted polynomials per stack and sampling sections and
 * sectors. Nullification of a lifted polynomial over a cell is detected and
 * raises CadNullification; decide-style callers retry with the Collins set.
 *
 * Variable convention: in an n-variable input, variable 0 is the base (last
 * projected) and variable n-1 is the main variable (first projected).
 */
#ifndef QUNIMODAL_CAD_HPP
#define QUNIMODAL_CAD_HPP

#include <memory>
#include <stdexcept>
#include <vector>

#include "algebraic_tower.hpp"
#include "linear.hpp"
#include "mpoly.hpp"

namespace qu {

struct CadOptions {
    enum class Proj { McCallum, Collins } proj = Proj::McCallum;
};

struct CadNullification : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One cell of the decomposition, described by its sample point.
struct CadCell {
    std::vector<int> kinds;         // per level: 0 = sector, 1 = section
    std::vector<QInterval> sample;  // rational enclosures of the sample coordinates
    std::vector<int> signs;         // sign of each input polynomial at the sample
};

struct CadResult {
    long nvars = 0;
    std::vector<CadCell> cells;
};

namespace cad_detail {

template <typename C>
void push_nonconstant(std::vector<C>&, const C&);

template <>
inline void push_nonconstant<QPoly>(std::vector<QPoly>& out, const QPoly& p) {
    if (p.degree() >= 1) out.push_back(monic(squarefree_part(p)));
}
template <>
inline void push_nonconstant<UPoly<QPoly>>(std::vector<UPoly<QPoly>>& out,
                                           const UPoly<QPoly>& p) {
    if (!p.is_zero()) out.push_back(p);
}

template <typename C>
void dedupe(std::vector<C>& v) {
    std::vector<C> out;
    for (const auto& p : v) {
        bool seen = false;
        for (const auto& q : out)
            if (p == q) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(p);
    }
    v = std::move(out);
}

/// Projection of a set of UPoly<C> in their main variable to C-polynomials.
template <typename C>
std::vector<C> project(const std::vector<UPoly<C>>& polys, CadOptions::Proj mode) {
    std::vector<C> out;
    auto add = [&](const C& c) {
        if (!ring_traits<C>::is_zero(c)) out.push_back(c);
    };
    for (const auto& f : polys) {
        for (const auto& c : f.c) add(c);
        if (f.degree() >= 2) {
            auto chain = subresultant_chain(f, f.derivative());
            add(chain.resultant);
            if (mode == CadOptions::Proj::Collins) {
                for (const auto& c : chain.psc) add(c);
                for (const auto& p : chain.prs)
                    if (!p.is_zero()) add(p.lc());
            }
        }
    }
    for (size_t i = 0; i < polys.size(); ++i)
        for (size_t j = i + 1; j < polys.size(); ++j) {
            if (polys[i].degree() < 1 || polys[j].degree() < 1) continue;
            auto chain = subresultant_chain(polys[i], polys[j]);
            add(chain.resultant);
            if (mode == CadOptions::Proj::Collins)
                for (const auto& c : chain.psc) add(c);
        }
    dedupe(out);
    return out;
}

/// Stack samples over one base point: sections at the roots of the product
/// of the given polynomials, sectors between and beyond them.
struct StackSample {
    int kind = 0;                        // 0 sector, 1 section
    Rational rational_value{0};          // for sectors
    RootInterval section_iv{Rational(0), Rational(0)};  // for sections
};

/// Samples plus, per section, the squarefree factor defining its root and
/// the factor's Sturm chain (for sign queries). Isolating intervals have
/// non-root endpoints and are pairwise disjoint across sections, so a shared
/// endpoint or a gap midpoint is a valid sector sample.
template <typename Ctx>
struct Stack {
    std::vector<StackSample> samples;
    std::vector<typename RelPoly<Ctx>::P> defs;          // empty entries for sectors
    std::vector<std::vector<typename RelPoly<Ctx>::P>> def_sturm;
};

/// Roots are isolated per squarefree factor (cheap chains on low-degree
/// factors) and merged by exact comparison, rather than through the product
/// of all inputs, keeping the defining polynomial of every section minimal.
template <typename Ctx>
Stack<Ctx> build_stack(const RelPoly<Ctx>& k, const std::vector<typename RelPoly<Ctx>::P>& polys) {
    using P = typename RelPoly<Ctx>::P;
    Stack<Ctx> st;
    auto push = [&](StackSample s, const P* def, const std::vector<P>* chain) {
        st.samples.push_back(std::move(s));
        st.defs.push_back(def ? *def : P());
        st.def_sturm.push_back(chain ? *chain : std::vector<P>());
    };

    struct Root {
        RootInterval iv;
        size_t fi;
    };
    std::vector<P> facs;
    std::vector<std::vector<P>> sturms;
    std::vector<Root> roots;
    for (const auto& f : polys) {
        P t = k.trim(f);
        if (t.degree() < 1) continue;
        P sf = k.squarefree_rel(t);
        bool dup = false;
        for (const auto& g : facs)
            if (g == sf) {
                dup = true;
                break;
            }
        if (dup) continue;
        std::vector<P> chain;
        auto ivs = k.isolate(sf, &chain);
        facs.push_back(std::move(sf));
        sturms.push_back(std::move(chain));
        for (const auto& iv : ivs) roots.push_back({iv, facs.size() - 1});
    }
    if (roots.empty()) {
        push({}, nullptr, nullptr);
        return st;
    }

    auto refine = [&](Root& r) {
        if (r.iv.exact()) return;
        Rational m = (r.iv.lo + r.iv.hi) / 2;
        if (k.ctx.sign_of(k.eval_at(facs[r.fi], m)) == 0) {
            r.iv = {m, m};
            return;
        }
        if (k.count_roots(sturms[r.fi], r.iv.lo, m) == 1)
            r.iv.hi = m;
        else
            r.iv.lo = m;
    };
    // exact -1/0/1 comparison; refines both intervals until they are either
    // the same root or disjoint (so sorted neighbors never overlap)
    auto cmp = [&](Root& a, Root& b) -> int {
        bool zb;  // does b's factor vanish at a's root?
        if (a.iv.exact())
            zb = k.ctx.sign_of(k.eval_at(facs[b.fi], a.iv.lo)) == 0;
        else
            zb = k.sign_at_root(facs[a.fi], a.iv, facs[b.fi], &sturms[a.fi]) == 0;
        while (true) {
            // a's root inside b's isolating interval and a root of b's
            // factor: it must be b's root
            if (zb && b.iv.lo <= a.iv.lo && a.iv.hi <= b.iv.hi) return 0;
            if (zb && b.iv.exact() && !a.iv.exact()) {
                // b's root is an exact point: it equals a's root iff it is
                // the root of a's factor isolated by a.iv (endpoints of
                // a.iv are non-roots, so equality forces interior hit)
                if (a.iv.lo < b.iv.lo && b.iv.lo < a.iv.hi &&
                    k.ctx.sign_of(k.eval_at(facs[a.fi], b.iv.lo)) == 0) {
                    a.iv = b.iv;
                    return 0;
                }
                zb = false;  // distinct roots: refine both until disjoint
            }
            if (a.iv.exact() && b.iv.exact())
                return a.iv.lo == b.iv.lo ? 0 : (a.iv.lo < b.iv.lo ? -1 : 1);
            // disjoint closures (endpoints are non-roots): strict order
            if (a.iv.hi <= b.iv.lo) return -1;
            if (b.iv.hi <= a.iv.lo) return 1;
            if (zb) {
                // refine a alone: if the roots coincide, a's interval must
                // eventually nest inside b's open interval (refining both
                // could stagger forever); if they differ, a's root is a
                // root of b's factor outside b's closure, so a separates
                refine(a);
                if (a.iv.exact()) refine(b);
            } else {
                refine(a);
                refine(b);
            }
        }
    };
    std::vector<Root> sorted;
    for (auto& r : roots) {
        size_t pos = sorted.size();
        bool dup = false;
        while (pos > 0) {
            int c = cmp(sorted[pos - 1], r);
            if (c == 0) {
                dup = true;
                break;
            }
            if (c < 0) break;
            --pos;
        }
        if (!dup) sorted.insert(sorted.begin() + pos, r);
    }

    // sector below the first root
    {
        StackSample s;
        s.rational_value = sorted.front().iv.lo - 1;
        push(s, nullptr, nullptr);
    }
    for (size_t i = 0; i < sorted.size(); ++i) {
        StackSample sec;
        sec.kind = 1;
        sec.section_iv = sorted[i].iv;
        push(sec, &facs[sorted[i].fi], &sturms[sorted[i].fi]);
        StackSample gap;
        if (i + 1 < sorted.size()) {
            // sample strictly between root i and root i+1
            if (sorted[i].iv.hi == sorted[i + 1].iv.lo)
                gap.rational_value = sorted[i].iv.hi;
            else
                gap.rational_value = (sorted[i].iv.hi + sorted[i + 1].iv.lo) / 2;
        } else {
            gap.rational_value = sorted[i].iv.hi + 1;
        }
        push(gap, nullptr, nullptr);
    }
    return st;
}

inline QInterval sample_interval(const StackSample& s) {
    if (s.kind == 0) return interval_point(s.rational_value);
    return {s.section_iv.lo, s.section_iv.hi};
}

}  // namespace cad_detail

/// Full decomposition for two variables. Inputs are sparse polynomials in
/// (x0, x1) with x1 the main variable.
inline CadResult cad_decompose2(const std::vector<MPolyQ>& polys, CadOptions opt = {}) {
    using P2 = UPoly<QPoly>;
    std::vector<P2> input;
    input.reserve(polys.size());
    for (const auto& p : polys) input.push_back(to_nested2(p, {0, 1}));

    std::vector<QPoly> base = cad_detail::project(input, opt.proj);

    CadResult result;
    result.nvars = 2;
    RelPoly<CtxQ> k0{CtxQ{}};
    auto base_stack = cad_detail::build_stack(k0, base);

    for (size_t si = 0; si < base_stack.samples.size(); ++si) {
        const auto& bs = base_stack.samples[si];
        // tower for the base coordinate
        std::shared_ptr<TowerVar> var;
        if (bs.kind == 0) {
            QPoly lin(std::vector<Rational>{-bs.rational_value, Rational(1)});
            var = std::make_shared<TowerVar>(lin,
                                             RootInterval{bs.rational_value, bs.rational_value});
        } else if (base_stack.defs[si].degree() == 1) {
            // rational section: keep the tower trivial
            const QPoly& def = base_stack.defs[si];
            Rational r = -def.c[0] / def.c[1];
            var = std::make_shared<TowerVar>(def, RootInterval{r, r});
        } else {
            var = std::make_shared<TowerVar>(base_stack.defs[si], bs.section_iv);
        }
        RelPoly<CtxAlg> k1{CtxAlg(var)};
        // nullification check on the input polynomials with positive degree;
        // degree-0 inputs simply take sign 0 on the whole fiber
        std::vector<P2> fiber;
        for (const auto& f : input) {
            P2 t = k1.trim(f);
            if (t.is_zero() && f.degree() >= 1)
                throw CadNullification("cad_decompose2: input vanishes on a fiber");
            fiber.push_back(std::move(t));
        }
        auto stack = cad_detail::build_stack(k1, fiber);
        for (size_t sj = 0; sj < stack.samples.size(); ++sj) {
            const auto& ss = stack.samples[sj];
            CadCell cell;
            cell.kinds = {bs.kind, ss.kind};
            cell.sample = {cad_detail::sample_interval(bs), cad_detail::sample_interval(ss)};
            for (size_t i = 0; i < input.size(); ++i) {
                int sg;
                if (ss.kind == 0)
                    sg = k1.ctx.sign_of(k1.eval_at(fiber[i], ss.rational_value));
                else
                    sg = k1.sign_at_root(stack.defs[sj], ss.section_iv, fiber[i],
                                         &stack.def_sturm[sj]);
                cell.signs.push_back(sg);
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

/// Full decomposition for three variables (x2 is the main variable).
inline CadResult cad_decompose3(const std::vector<MPolyQ>& polys, CadOptions opt = {}) {
    using P2 = UPoly<QPoly>;
    using P3 = UPoly<P2>;
    std::vector<P3> input;
    input.reserve(polys.size());
    for (const auto& p : polys) input.push_back(to_nested3(p, {0, 1, 2}));

    std::vector<P2> mid = cad_detail::project(input, opt.proj);
    std::vector<QPoly> base = cad_detail::project(mid, opt.proj);

    CadResult result;
    result.nvars = 3;
    RelPoly<CtxQ> k0{CtxQ{}};
    auto base_stack = cad_detail::build_stack(k0, base);

    for (size_t si = 0; si < base_stack.samples.size(); ++si) {
        const auto& bs = base_stack.samples[si];
        std::shared_ptr<TowerVar> var;
        if (bs.kind == 0) {
            QPoly lin(std::vector<Rational>{-bs.rational_value, Rational(1)});
            var = std::make_shared<TowerVar>(lin,
                                             RootInterval{bs.rational_value, bs.rational_value});
        } else if (base_stack.defs[si].degree() == 1) {
            const QPoly& def = base_stack.defs[si];
            Rational r = -def.c[0] / def.c[1];
            var = std::make_shared<TowerVar>(def, RootInterval{r, r});
        } else {
            var = std::make_shared<TowerVar>(base_stack.defs[si], bs.section_iv);
        }
        RelPoly<CtxAlg> k1{CtxAlg(var)};
        std::vector<P2> mid_fiber;
        for (const auto& f : mid) mid_fiber.push_back(k1.trim(f));
        auto stack2 = cad_detail::build_stack(k1, mid_fiber);

        for (size_t sj = 0; sj < stack2.samples.size(); ++sj) {
            const auto& ms = stack2.samples[sj];
            // level-2 tower
            std::unique_ptr<CtxAlg2> ctx2;
            if (ms.kind == 0) {
                P2 lin(std::vector<QPoly>{QPoly::constant(-ms.rational_value),
                                          QPoly::constant(Rational(1))});
                ctx2 = std::make_unique<CtxAlg2>(
                    var, lin, RootInterval{ms.rational_value, ms.rational_value});
            } else {
                ctx2 = std::make_unique<CtxAlg2>(var, stack2.defs[sj], ms.section_iv);
            }
            RelPoly<CtxAlg2> k2{*ctx2};
            std::vector<P3> top_fiber;
            for (const auto& f : input) {
                P3 t = k2.trim(f);
                if (t.is_zero() && f.degree() >= 1)
                    throw CadNullification("cad_decompose3: input vanishes on a fiber");
                top_fiber.push_back(std::move(t));
            }
            auto stack3 = cad_detail::build_stack(k2, top_fiber);
            for (size_t sk = 0; sk < stack3.samples.size(); ++sk) {
                const auto& ts = stack3.samples[sk];
                CadCell cell;
                cell.kinds = {bs.kind, ms.kind, ts.kind};
                cell.sample = {cad_detail::sample_interval(bs), cad_detail::sample_interval(ms),
                               cad_detail::sample_interval(ts)};
                for (size_t i = 0; i < input.size(); ++i) {
                    int sg;
                    if (ts.kind == 0)
                        sg = k2.ctx.sign_of(k2.eval_at(top_fiber[i], ts.rational_value));
                    else
                        sg = k2.sign_at_root(stack3.defs[sk], ts.section_iv, top_fiber[i],
                                             &stack3.def_sturm[sk]);
                    cell.signs.push_back(sg);
                }
                result.cells.push_back(std::move(cell));
            }
        }
    }
    return result;
}

inline CadResult cad_decompose(const std::vector<MPolyQ>& polys, long nvars, CadOptions opt = {}) {
    if (nvars == 2) return cad_decompose2(polys, opt);
    if (nvars == 3) return cad_decompose3(polys, opt);
    throw std::invalid_argument("cad_decompose: nvars must be 2 or 3");
}

// ---------------------------------------------------------------------------
// Decision interface
// ---------------------------------------------------------------------------

/// Reindex variables: new variable j is old variable src_of[j].
inline MPolyQ permute_vars(const MPolyQ& p, const std::vector<long>& src_of) {
    MPolyQ out(p.nvars);
    for (const auto& [e, c] : p.terms) {
        std::vector<long> ne(e.size(), 0);
        for (size_t j = 0; j < src_of.size(); ++j) ne[j] = e[src_of[j]];
        out.add_term(ne, c);
    }
    return out;
}

inline Region permute_region(const Region& r, const std::vector<long>& src_of) {
    Region out;
    for (const auto& c : r.constraints) {
        LinForm f(static_cast<long>(src_of.size()));
        f.constant = c.form.constant;
        for (size_t j = 0; j < src_of.size(); ++j) f.coeff[j] = c.form.coeff[src_of[j]];
        out.constraints.push_back({f, c.strict});
    }
    return out;
}

struct CadVerdict {
    bool proven = false;
    std::vector<CadCell> failing;  // cells inside the region where target < 0
    CadOptions::Proj projection_used = CadOptions::Proj::McCallum;
};

/// Does target >= 0 hold on the (closed) region? The region consists of
/// linear inequalities over the same variables, in the same CAD order.
/// Falls back to the Collins projection when McCallum nullifies.
inline CadVerdict cad_prove_nonneg(const MPolyQ& target, const Region& region, long nvars,
                                   CadOptions opt = {}) {
    // deduplicate: repeated constraints would only inflate the stacks
    std::vector<MPolyQ> polys;
    std::vector<size_t> slot;  // per target/constraint: index into polys
    auto add_poly = [&](const MPolyQ& p) {
        for (size_t i = 0; i < polys.size(); ++i)
            if (polys[i] == p) {
                slot.push_back(i);
                return;
            }
        slot.push_back(polys.size());
        polys.push_back(p);
    };
    add_poly(target);
    for (const auto& c : region.constraints) add_poly(MPolyQ::from_linform(c.form));

    CadVerdict verdict;
    CadResult dec;
    try {
        dec = cad_decompose(polys, nvars, opt);
        verdict.projection_used = opt.proj;
    } catch (const CadNullification&) {
        CadOptions fallback = opt;
        fallback.proj = CadOptions::Proj::Collins;
        dec = cad_decompose(polys, nvars, fallback);
        verdict.projection_used = CadOptions::Proj::Collins;
    }
    for (auto& cell : dec.cells) {
        bool inside = true;
        for (size_t i = 0; i < region.constraints.size(); ++i) {
            int sg = cell.signs[slot[i + 1]];
            if (region.constraints[i].strict ? sg <= 0 : sg < 0) {
                inside = false;
                break;
            }
        }
        if (inside && cell.signs[slot[0]] < 0) verdict.failing.push_back(std::move(cell));
    }
    verdict.proven = verdict.failing.empty();
    return verdict;
}

}  // namespace qu

#endif
