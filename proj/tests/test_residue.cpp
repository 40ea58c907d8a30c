// Residue-class reduction: omega elimination and case enumeration.
#include <doctest.h>

#include "qunimodal/oracle.hpp"
#include "qunimodal/residue.hpp"

using namespace qu;

namespace {

AssembleSpec gaussian_spec(long m) {
    AssembleSpec spec;
    spec.numerator = expand_gaussian_numerator(1, m);
    std::vector<long> exps(m);
    for (long i = 0; i < m; ++i) exps[i] = i + 1;
    spec.denom = expand_denominator_cached(exps);
    spec.param_domain.add_ge(LinForm::var(1, 0));
    spec.k_low = LinForm::konst(1, Rational(0));
    spec.k_high = make_rational(m, 2) * LinForm::var(1, 0);
    return spec;
}

}  // namespace

TEST_CASE("effective moduli clear every omega exponent") {
    auto pw = assemble_piecewise(gaussian_spec(3));
    auto full = effective_moduli(pw, ModulusMode::FullOrder);
    CHECK(full == std::vector<long>{6, 6});
    auto red = effective_moduli(pw, ModulusMode::Reduced);
    for (long v = 0; v < pw.nvars; ++v) {
        CHECK(red[v] >= 1);
        CHECK(red[v] <= 6);
        CHECK(6 % red[v] == 0);
        for (const auto& piece : pw.pieces)
            for (const auto& [w, p] : piece.expr.terms())
                CHECK((w.coeff[v] * red[v]) % 6 == 0);
    }
}

TEST_CASE("pinned residue case for the m=3 difference: (kappa, lambda) = (4, 2)") {
    auto pw = assemble_piecewise(gaussian_spec(3));
    auto dw = forward_difference(pw);
    auto rc = reduce_case(dw, {6, 6}, {4, 2});
    REQUIRE(rc.pieces.size() == 2);

    // identify the k < l piece via an interior integer point: k' = 0, l' = 2
    // (k = 4, l = 14)
    const ReducedPiece* low = nullptr;
    const ReducedPiece* high = nullptr;
    for (const auto& p : rc.pieces) {
        if (p.region.contains_int({0, 2})) low = &p;
        if (p.region.contains_int({1, 1})) high = &p;  // k = 10 >= l = 8
    }
    REQUIRE(low != nullptr);
    REQUIRE(high != nullptr);
    CHECK(low != high);

    // pinned closed forms: k' + 1 below the switch, 3l' - 2k' - 1 above
    MPolyQ expect_low = MPolyQ::variable(2, 0) + MPolyQ::constant(2, Rational(1));
    MPolyQ expect_high = Rational(3) * MPolyQ::variable(2, 1) -
                         Rational(2) * MPolyQ::variable(2, 0) -
                         MPolyQ::constant(2, Rational(1));
    CHECK(low->poly == expect_low);
    CHECK(high->poly == expect_high);

    // full agreement with the oracle difference on the case lattice
    for (long lp = 0; lp <= 4; ++lp) {
        const long l = 6 * lp + 2;
        auto table = gaussian_coefficients(l, 3);
        for (long kp = -1; kp <= lp + 2; ++kp) {
            const long k = 6 * kp + 4;
            if (k < 0 || k + 1 > 3 * l / 2) continue;
            Rational want = Rational(table.at(k + 1) - table.at(k));
            const ReducedPiece* hit = nullptr;
            for (const auto& p : rc.pieces)
                if (p.region.contains_int({kp, lp})) {
                    CHECK(hit == nullptr);
                    hit = &p;
                }
            REQUIRE(hit != nullptr);
            CHECK(hit->poly.evaluate_int({kp, lp}) == want);
        }
    }
}

TEST_CASE("modulus-reduction soundness: reduced and full cases agree with the oracle") {
    auto pw = assemble_piecewise(gaussian_spec(3));
    auto red = effective_moduli(pw, ModulusMode::Reduced);
    ResidueEnumeration en{red};
    for (long idx = 0; idx < en.total(); ++idx) {
        auto residues = en.residues_of(idx);
        auto rc = reduce_case(pw, red, residues);
        for (long lp = 0; lp <= 3; ++lp) {
            const long l = red[1] * lp + residues[1];
            auto table = gaussian_coefficients(l, 3);
            for (long kp = 0; kp <= 2 * lp + 1; ++kp) {
                const long k = red[0] * kp + residues[0];
                if (k > 3 * l / 2) continue;
                const ReducedPiece* hit = nullptr;
                for (const auto& p : rc.pieces)
                    if (p.region.contains_int({kp, lp})) hit = &p;
                REQUIRE(hit != nullptr);
                CHECK(hit->poly.evaluate_int({kp, lp}) == Rational(table.at(k)));
            }
        }
    }
}

TEST_CASE("residue enumeration round trip") {
    ResidueEnumeration en{{6, 6, 30}};
    CHECK(en.total() == 1080);
    for (long idx : {0L, 1L, 7L, 359L, 1079L}) {
        auto r = en.residues_of(idx);
        CHECK(en.index_of(r) == idx);
        for (size_t v = 0; v < r.size(); ++v) {
            CHECK(r[v] >= 0);
            CHECK(r[v] < en.moduli[v]);
        }
    }
}
