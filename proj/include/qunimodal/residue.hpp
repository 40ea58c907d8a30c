/**
 * @file residue.hpp
 * @brief Elimination of roots of unity by residue-class case analysis.
 *
 * Substituting x_v = M_v x'_v + r_v with L | c M_v for every omega-exponent
 * coefficient c of x_v turns each exponential-polynomial piece into a plain
 * polynomial with rational coefficients in the primed variables. The
 * reduced moduli are the smallest with that property; the full mode uses
 * M_v = L for every variable, which matches the classical case split.
 */
#ifndef QUNIMODAL_RESIDUE_HPP
#define QUNIMODAL_RESIDUE_HPP

#include <numeric>
#include <stdexcept>
#include <vector>

#include "closed_form.hpp"
#include "mpoly.hpp"

namespace qu {

enum class ModulusMode { Reduced, FullOrder };

/// Per-variable moduli M_v such that every omega exponent becomes constant
/// under x_v -> M_v x'_v + r_v.
inline std::vector<long> effective_moduli(const PiecewiseClosedForm& pw,
                                          ModulusMode mode = ModulusMode::FullOrder) {
    const long L = pw.order;
    std::vector<long> g(pw.nvars, 0);
    for (const auto& piece : pw.pieces)
        for (const auto& [w, p] : piece.expr.terms())
            for (long v = 0; v < pw.nvars; ++v) g[v] = std::gcd(g[v], w.coeff[v]);
    std::vector<long> M(pw.nvars, L);
    if (mode == ModulusMode::Reduced)
        for (long v = 0; v < pw.nvars; ++v) M[v] = L / std::gcd(L, g[v]);
    return M;
}

/// One residue case of a piecewise closed form: every piece becomes a
/// rational polynomial in the primed variables, and the regions transform
/// by the same affine substitution.
struct ReducedPiece {
    Region region;  // over primed variables
    MPolyQ poly;
};

struct ResidueCase {
    std::vector<long> moduli;
    std::vector<long> residues;
    std::vector<ReducedPiece> pieces;
    Region domain;  // Omega' over primed variables
};

namespace detail {

// (M x' + r)^e as an MPolyQ in the primed variables
inline MPolyQ affine_power(long nvars, long var, long M, long r, long e) {
    MPolyQ base = Rational(M) * MPolyQ::variable(nvars, var) + MPolyQ::constant(nvars, Rational(r));
    MPolyQ acc = MPolyQ::constant(nvars, Rational(1));
    for (long i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

}  // namespace detail

inline ResidueCase reduce_case(const PiecewiseClosedForm& pw, const std::vector<long>& moduli,
                               const std::vector<long>& residues) {
    const long L = pw.order;
    const long n = pw.nvars;
    if (static_cast<long>(moduli.size()) != n || static_cast<long>(residues.size()) != n)
        throw std::invalid_argument("reduce_case: arity mismatch");

    ResidueCase out;
    out.moduli = moduli;
    out.residues = residues;

    std::vector<Rational> scale(n), offset(n);
    for (long v = 0; v < n; ++v) {
        scale[v] = Rational(moduli[v]);
        offset[v] = Rational(residues[v]);
    }
    auto reduce_region = [&](const Region& r) {
        Region s;
        for (const auto& c : r.constraints)
            s.constraints.push_back({c.form.substitute_affine(scale, offset), c.strict});
        s.normalize();
        return s;
    };
    out.domain = reduce_region(pw.domain);

    for (const auto& piece : pw.pieces) {
        ReducedPiece rp;
        rp.region = reduce_region(piece.region);
        rp.poly = MPolyQ(n);
        // accumulate with cyclotomic coefficients, then demand rationality
        MPolyCyc acc(L, n);
        for (const auto& [w, p] : piece.expr.terms()) {
            long root_exp = w.constant;
            for (long v = 0; v < n; ++v) {
                if ((w.coeff[v] * moduli[v]) % L != 0)
                    throw std::invalid_argument(
                        "reduce_case: modulus does not clear an omega exponent");
                root_exp = mod_floor(root_exp + w.coeff[v] * residues[v], L);
            }
            CycNum root = power_of_omega(root_exp, L);
            // substitute the affine map into the polynomial part
            for (const auto& [e, c] : p.terms()) {
                MPolyQ mono = MPolyQ::constant(n, Rational(1));
                for (long v = 0; v < n; ++v)
                    if (e[v] > 0)
                        mono = mono * detail::affine_power(n, v, moduli[v], residues[v], e[v]);
                CycNum coeff = root * c;
                for (const auto& [me, mc] : mono.terms) {
                    std::vector<long> key = me;
                    acc.add_term(key, mc * coeff);
                }
            }
        }
        for (const auto& [e, c] : acc.terms()) {
            if (!c.is_rational())
                throw std::logic_error("reduce_case: residual omega after substitution");
            rp.poly.add_term(e, c.rational_part());
        }
        out.pieces.push_back(std::move(rp));
    }
    return out;
}

/// Mixed-radix enumeration of residue tuples; total() cases, addressable by
/// index for slicing and parallel dispatch.
struct ResidueEnumeration {
    std::vector<long> moduli;

    long total() const {
        long t = 1;
        for (long m : moduli) t *= m;
        return t;
    }
    std::vector<long> residues_of(long index) const {
        std::vector<long> r(moduli.size());
        for (size_t v = 0; v < moduli.size(); ++v) {
            r[v] = index % moduli[v];
            index /= moduli[v];
        }
        return r;
    }
    long index_of(const std::vector<long>& residues) const {
        long idx = 0;
        for (size_t v = moduli.size(); v-- > 0;) idx = idx * moduli[v] + residues[v];
        return idx;
    }
};

}  // namespace qu

#endif
