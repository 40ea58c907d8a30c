// Denominator closed forms and piecewise assembly, checked against the
// brute-force coefficient oracles.
#include <doctest.h>

#include <vector>

#include "qunimodal/closed_form.hpp"
#include "qunimodal/oracle.hpp"

using namespace qu;

namespace {

// c_k of N(q^l) / (q;q)_m for a concrete l, by exact series division
std::vector<Rational> series_oracle(const SymbolicNumerator& num, const std::vector<long>& params,
                                    const std::vector<long>& exponents, long count) {
    auto inst = num.instantiate(params);
    long max_e = 0;
    for (const auto& [e, c] : inst) max_e = std::max(max_e, e);
    auto inv = taylor_inverse(denominator_product(exponents), count + max_e + 1);
    std::vector<Rational> out(count, Rational(0));
    for (const auto& [e, c] : inst) {
        if (e < 0) throw std::logic_error("series_oracle: negative exponent");
        for (long k = e; k < count; ++k) out[k] += c * inv[k - e];
    }
    return out;
}

AssembleSpec gaussian_spec(long m) {
    AssembleSpec spec;
    spec.numerator = expand_gaussian_numerator(1, m);
    std::vector<long> exps(m);
    for (long i = 0; i < m; ++i) exps[i] = i + 1;
    spec.denom = expand_denominator_cached(exps);
    spec.param_domain.add_ge(LinForm::var(1, 0));  // l >= 0
    spec.k_low = LinForm::konst(1, Rational(0));
    spec.k_high = make_rational(m, 2) * LinForm::var(1, 0);  // k <= m l / 2
    return spec;
}

}  // namespace

TEST_CASE("1/(1-q)^2 has coefficients k+1") {
    auto d = expand_denominator({1, 1});
    CHECK(d.order == 1);
    CHECK(d.degree == 2);
    CHECK(d.k0 == -1);
    CHECK(d.evaluate(-1) == 0);
    for (long k = 0; k <= 10; ++k) CHECK(d.evaluate(k) == k + 1);
    CHECK(validity_floor(d) == -1);
}

TEST_CASE("denominator (q;q)_3: pinned partial-fraction coefficients") {
    auto d = expand_denominator({1, 2, 3});
    CHECK(d.order == 6);
    CHECK(d.k0 == -5);
    CHECK(validity_floor(d) == -5);

    // d_k = 47/72 + k/2 + k^2/12 + (-1)^k/8 + (w^{2k} + w^{4k})/9
    const auto& terms = d.expr.terms();
    auto poly_at = [&](long t, long j) -> Rational {
        OmegaForm w = OmegaForm::reduced({t}, 0, 6);
        auto it = terms.find(w);
        REQUIRE(it != terms.end());
        for (const auto& [e, c] : it->second.terms())
            if (e[0] == j) {
                REQUIRE(c.is_rational());
                return c.rational_part();
            }
        return Rational(0);
    };
    CHECK(poly_at(0, 0) == make_rational(47, 72));
    CHECK(poly_at(0, 1) == make_rational(1, 2));
    CHECK(poly_at(0, 2) == make_rational(1, 12));
    CHECK(poly_at(3, 0) == make_rational(1, 8));
    CHECK(poly_at(2, 0) == make_rational(1, 9));
    CHECK(poly_at(4, 0) == make_rational(1, 9));

    // both ansatz variants agree everywhere on the validity range
    auto dt = expand_denominator({1, 2, 3}, AnsatzVariant::TaylorMatch);
    for (long k = -5; k <= 30; ++k) CHECK(d.evaluate(k) == dt.evaluate(k));
}

TEST_CASE("denominator (q;q)_6: floor -20 and Taylor agreement") {
    auto d = expand_denominator_cached({1, 2, 3, 4, 5, 6});
    CHECK(d.order == 60);
    CHECK(d.degree == 21);
    CHECK(d.k0 == -20);
    CHECK(validity_floor(d) == -20);
    auto taylor = taylor_inverse(denominator_product(d.exponents), 80);
    for (long k = 0; k < 80; ++k) CHECK(d.evaluate(k) == taylor[k]);
}

TEST_CASE("piecewise gaussian m=3: two pieces, oracle sweep, extended validity") {
    auto pw = assemble_piecewise(gaussian_spec(3));
    CHECK(pw.pieces.size() == 2);
    CHECK(pw.k0 == -5);
    for (long l = 0; l <= 12; ++l) {
        auto table = gaussian_coefficients(l, 3);
        for (long k = 0; k <= 3 * l / 2; ++k)
            CHECK(pw.evaluate_int({k, l}) == Rational(table.at(k)));
    }
    // the k >= l piece stays exact down to k = l - 2 (validity slack)
    const long l = 9;
    const Piece* upper = pw.piece_at({l, l});
    REQUIRE(upper != nullptr);
    auto table = gaussian_coefficients(l, 3);
    CHECK(upper->expr.evaluate_int({l - 1, l}) == Rational(table.at(l - 1)));
    CHECK(upper->expr.evaluate_int({l - 2, l}) == Rational(table.at(l - 2)));
    bool has_low = false;
    for (const auto& f : upper->valid_low)
        if (f.evaluate_int({0, l}) == l - 2) has_low = true;
    CHECK(has_low);
}

TEST_CASE("forward difference m=3: same skeleton, boundary at k = l") {
    auto pw = assemble_piecewise(gaussian_spec(3));
    auto dw = forward_difference(pw);
    CHECK(dw.is_difference);
    CHECK(dw.pieces.size() == 2);
    for (long l = 1; l <= 12; ++l) {
        auto table = gaussian_coefficients(l, 3);
        for (long k = 0; k <= 3 * l / 2 - 1; ++k)
            CHECK(dw.evaluate_int({k, l}) == Rational(table.at(k + 1) - table.at(k)));
    }
    // pieces split exactly at k = l
    const long l = 8;
    const Piece* below = dw.piece_at({l - 1, l});
    const Piece* above = dw.piece_at({l, l});
    REQUIRE(below != nullptr);
    REQUIRE(above != nullptr);
    CHECK(below != above);
}

TEST_CASE("piece counts and sweeps for m = 4, 5, 6") {
    struct Row {
        long m;
        size_t pieces;
        long lmax;
    } rows[] = {{4, 2, 10}, {5, 3, 8}, {6, 3, 8}};
    for (const auto& r : rows) {
        CAPTURE(r.m);
        auto pw = assemble_piecewise(gaussian_spec(r.m));
        CHECK(pw.pieces.size() == r.pieces);
        auto dw = forward_difference(pw);
        CHECK(dw.pieces.size() == r.pieces);
        for (long l = 0; l <= r.lmax; ++l) {
            auto table = gaussian_coefficients(l, r.m);
            for (long k = 0; k <= r.m * l / 2; ++k)
                CHECK(pw.evaluate_int({k, l}) == Rational(table.at(k)));
            for (long k = 0; k + 1 <= r.m * l / 2; ++k)
                CHECK(dw.evaluate_int({k, l}) == Rational(table.at(k + 1) - table.at(k)));
        }
    }
}

TEST_CASE("band fallback: numerator spread exceeding the validity slack") {
    // N = 1 + q^l - q^{l+4} over D = (1-q)(1-q^2): group spread 4 > deg D - 1
    AssembleSpec spec;
    spec.numerator = SymbolicNumerator::constant(1, Rational(1)) +
                     SymbolicNumerator::monomial(1, Rational(1), {1}, 0) -
                     SymbolicNumerator::monomial(1, Rational(1), {1}, 4);
    spec.denom = expand_denominator({1, 2});
    spec.param_domain.add_ge(LinForm::var(1, 0) - LinForm::konst(1, Rational(4)));  // l >= 4
    spec.k_low = LinForm::konst(1, Rational(0));
    spec.k_high = LinForm::var(1, 0) + LinForm::konst(1, Rational(10));
    auto pw = assemble_piecewise(spec);
    // excluded / two one-point bands / included, plus the always-on constant
    CHECK(pw.pieces.size() == 4);
    for (long l = 4; l <= 9; ++l) {
        auto oracle = series_oracle(spec.numerator, {l}, {1, 2}, l + 11);
        for (long k = 0; k <= l + 10; ++k) CHECK(pw.evaluate_int({k, l}) == oracle[k]);
    }
}

TEST_CASE("sz m=6: eight regions for both c and its difference") {
    AssembleSpec spec;
    spec.numerator = build_sz6_numerator();
    spec.denom = expand_denominator_cached({1, 2, 3, 4, 5, 6});
    // domain: l >= 0, 0 <= b, 2b <= 3l
    spec.param_domain.add_ge(LinForm::var(2, 0));
    spec.param_domain.add_ge(LinForm::var(2, 1));
    spec.param_domain.add_ge(Rational(3) * LinForm::var(2, 0) -
                             Rational(2) * LinForm::var(2, 1));
    spec.k_low = LinForm::konst(2, Rational(0));
    spec.k_high = Rational(3) * LinForm::var(2, 0);  // midpoint of [l+6, 6]
    auto pw = assemble_piecewise(spec);
    CHECK(pw.pieces.size() == 8);
    auto dw = forward_difference(pw);
    CHECK(dw.pieces.size() == 8);

    for (long l : {5L, 8L, 11L}) {
        for (long b = 0; 2 * b <= 3 * l; b += 3) {
            auto diff = sz_difference(l, 6, b);
            auto at = [&](long k) {
                return k < static_cast<long>(diff.size()) ? Rational(diff[k]) : Rational(0);
            };
            for (long k = 0; k <= 3 * l; ++k) CHECK(pw.evaluate_int({k, l, b}) == at(k));
            for (long k = 0; k + 1 <= 3 * l; ++k)
                CHECK(dw.evaluate_int({k, l, b}) == at(k + 1) - at(k));
        }
    }
}

TEST_CASE("gaussian m=7: four pieces" * doctest::timeout(500)) {
    auto pw = assemble_piecewise(gaussian_spec(7));
    CHECK(pw.k0 == -27);
    CHECK(pw.pieces.size() == 4);
    for (long l : {3L, 6L}) {
        auto table = gaussian_coefficients(l, 7);
        for (long k = 0; k <= 7 * l / 2; ++k)
            CHECK(pw.evaluate_int({k, l}) == Rational(table.at(k)));
    }
}

TEST_CASE("sz m=7 residue case b1 = 4, lambda1 = 4" * doctest::timeout(500)) {
    AssembleSpec spec;
    spec.numerator = build_sz7_numerator(4, 4);
    spec.denom = expand_denominator_cached({1, 2, 3, 4, 5, 6, 7});
    spec.param_domain.add_ge(LinForm::var(1, 0) - LinForm::konst(1, Rational(1)));  // l1 >= 1
    spec.k_low = LinForm::konst(1, Rational(0));
    // midpoint of [l+7, 7] with l = 5 l1 + 4
    spec.k_high = make_rational(35, 2) * LinForm::var(1, 0) + LinForm::konst(1, Rational(14));
    auto pw = assemble_piecewise(spec);
    CHECK(!pw.pieces.empty());
    for (long l1 : {2L, 4L}) {
        const long l = 5 * l1 + 4, b = 7 * l1;
        auto diff = sz_difference(l, 7, b);
        auto at = [&](long k) {
            return k < static_cast<long>(diff.size()) ? Rational(diff[k]) : Rational(0);
        };
        for (long k = 0; 2 * k <= 35 * l1 + 28; ++k) CHECK(pw.evaluate_int({k, l1}) == at(k));
    }
}
