/**
 * @file test_cad.cpp
 * @brief Cylindrical decomposition: cell structure, sign correctness against
 *        direct evaluation and grid sweeps, and the decision interface.
 */
#include <doctest.h>

#include <qunimodal/cad.hpp>

#include <set>
#include <vector>

using namespace qu;

namespace {

// Interval evaluation of a sparse polynomial over a box.
QInterval eval_box(const MPolyQ& p, const std::vector<QInterval>& box) {
    QInterval acc = interval_point(Rational(0));
    for (const auto& [e, c] : p.terms) {
        QInterval t = interval_point(c);
        for (size_t v = 0; v < e.size(); ++v)
            for (long i = 0; i < e[v]; ++i) t = t * box[v];
        acc = acc + t;
    }
    return acc;
}

int sign_r(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// When every coordinate of the sample is exact, signs must agree with direct
// evaluation; otherwise the interval evaluation, when sign-definite, must
// agree with the recorded sign.
void check_cell_signs(const std::vector<MPolyQ>& polys, const CadResult& dec) {
    for (const auto& cell : dec.cells) {
        bool exact = true;
        for (const auto& iv : cell.sample)
            if (!(iv.lo == iv.hi)) exact = false;
        for (size_t i = 0; i < polys.size(); ++i) {
            if (exact) {
                MPolyQ p = polys[i];
                Rational v(0);
                // evaluate at rational point via interval arithmetic (exact)
                QInterval b = eval_box(p, cell.sample);
                REQUIRE(b.lo == b.hi);
                v = b.lo;
                CHECK(sign_r(v) == cell.signs[i]);
            } else {
                QInterval b = eval_box(polys[i], cell.sample);
                if (!b.contains_zero()) CHECK((b.lo > 0 ? 1 : -1) == cell.signs[i]);
            }
        }
    }
}

}  // namespace

TEST_CASE("cad2: circle stack structure and signs") {
    // x1^2 + x0^2 - 4, main variable x1
    MPolyQ circle(2);
    circle.add_term({0, 2}, Rational(1));
    circle.add_term({2, 0}, Rational(1));
    circle.add_term({0, 0}, Rational(-4));

    auto dec = cad_decompose2({circle});
    // base roots at +-2: 5 base samples; stacks of sizes 1,3,5,3,1
    CHECK(dec.cells.size() == 13);

    long zeros = 0, neg = 0, pos = 0;
    for (const auto& c : dec.cells) {
        REQUIRE(c.signs.size() == 1);
        if (c.signs[0] == 0) ++zeros;
        if (c.signs[0] < 0) ++neg;
        if (c.signs[0] > 0) ++pos;
    }
    CHECK(zeros == 4);  // two sections over the interior sector, one over each +-2
    CHECK(neg == 1);    // the open disc interior
    CHECK(pos == 8);
    check_cell_signs({circle}, dec);
}

TEST_CASE("cad2: grid sign vectors are realized by cells") {
    MPolyQ circle(2);
    circle.add_term({0, 2}, Rational(1));
    circle.add_term({2, 0}, Rational(1));
    circle.add_term({0, 0}, Rational(-4));
    MPolyQ diag(2);  // x1 - x0
    diag.add_term({0, 1}, Rational(1));
    diag.add_term({1, 0}, Rational(-1));

    std::vector<MPolyQ> polys{circle, diag};
    auto dec = cad_decompose2(polys);
    check_cell_signs(polys, dec);

    std::set<std::vector<int>> cell_vectors;
    for (const auto& c : dec.cells) cell_vectors.insert(c.signs);

    for (long i = -12; i <= 12; ++i)
        for (long j = -12; j <= 12; ++j) {
            Rational x0 = make_rational(i, 4), x1 = make_rational(j, 4);
            std::vector<QInterval> pt{interval_point(x0), interval_point(x1)};
            std::vector<int> sv;
            for (const auto& p : polys) sv.push_back(sign_r(eval_box(p, pt).lo));
            CHECK(cell_vectors.count(sv) == 1);
        }
}

TEST_CASE("cad2: decision interface") {
    // x1 - x0^2 is not nonnegative on the strip -1 <= x0 <= 1, x1 >= 0
    MPolyQ target(2);
    target.add_term({0, 1}, Rational(1));
    target.add_term({2, 0}, Rational(-1));
    Region strip;
    strip.add_ge(LinForm::var(2, 0) + LinForm::konst(2, Rational(1)));
    strip.add_ge(LinForm::var(2, 0, Rational(-1)) + LinForm::konst(2, Rational(1)));
    strip.add_ge(LinForm::var(2, 1));

    auto verdict = cad_prove_nonneg(target, strip, 2);
    CHECK(!verdict.proven);
    CHECK(!verdict.failing.empty());
    // every failing sample really violates the target while inside the region
    for (const auto& cell : verdict.failing) {
        QInterval b = eval_box(target, cell.sample);
        if (!b.contains_zero()) CHECK(b.hi < 0);
    }

    // x1 + 1 >= 0 holds on x1 >= 0 (x0 free)
    MPolyQ ok(2);
    ok.add_term({0, 1}, Rational(1));
    ok.add_term({0, 0}, Rational(1));
    Region half;
    half.add_ge(LinForm::var(2, 1));
    CHECK(cad_prove_nonneg(ok, half, 2).proven);

    // x0^2 + x1^2 + 1 > 0 everywhere
    MPolyQ pos(2);
    pos.add_term({2, 0}, Rational(1));
    pos.add_term({0, 2}, Rational(1));
    pos.add_term({0, 0}, Rational(1));
    CHECK(cad_prove_nonneg(pos, Region{}, 2).proven);
}

TEST_CASE("cad3: sphere and plane") {
    MPolyQ sphere(3);
    sphere.add_term({2, 0, 0}, Rational(1));
    sphere.add_term({0, 2, 0}, Rational(1));
    sphere.add_term({0, 0, 2}, Rational(1));
    sphere.add_term({0, 0, 0}, Rational(-4));
    MPolyQ plane(3);  // x2 - x0
    plane.add_term({0, 0, 1}, Rational(1));
    plane.add_term({1, 0, 0}, Rational(-1));

    std::vector<MPolyQ> polys{sphere, plane};
    auto dec = cad_decompose3(polys);
    CHECK(dec.nvars == 3);
    CHECK(!dec.cells.empty());
    check_cell_signs(polys, dec);

    std::set<std::vector<int>> cell_vectors;
    for (const auto& c : dec.cells) cell_vectors.insert(c.signs);
    for (long i = -6; i <= 6; i += 2)
        for (long j = -6; j <= 6; j += 2)
            for (long k = -6; k <= 6; k += 2) {
                std::vector<QInterval> pt{interval_point(make_rational(i, 2)),
                                          interval_point(make_rational(j, 2)),
                                          interval_point(make_rational(k, 2))};
                std::vector<int> sv;
                for (const auto& p : polys) sv.push_back(sign_r(eval_box(p, pt).lo));
                CHECK(cell_vectors.count(sv) == 1);
            }
}

TEST_CASE("cad3: decision interface") {
    // x0^2 + x1^2 + x2^2 >= 0 everywhere
    MPolyQ ssq(3);
    ssq.add_term({2, 0, 0}, Rational(1));
    ssq.add_term({0, 2, 0}, Rational(1));
    ssq.add_term({0, 0, 2}, Rational(1));
    CHECK(cad_prove_nonneg(ssq, Region{}, 3).proven);

    // x2 - x1 fails on the box 0 <= x1, x2 <= 1 (e.g. x1 = 1, x2 = 0)
    MPolyQ diff(3);
    diff.add_term({0, 0, 1}, Rational(1));
    diff.add_term({0, 1, 0}, Rational(-1));
    Region box;
    box.add_ge(LinForm::var(3, 1));
    box.add_ge(LinForm::var(3, 1, Rational(-1)) + LinForm::konst(3, Rational(1)));
    box.add_ge(LinForm::var(3, 2));
    box.add_ge(LinForm::var(3, 2, Rational(-1)) + LinForm::konst(3, Rational(1)));
    auto verdict = cad_prove_nonneg(diff, box, 3);
    CHECK(!verdict.proven);
}

TEST_CASE("cad2: tangent line forces algebraic lifting") {
    // parabola and a tangent-ish line whose intersections are irrational:
    // x1 - x0^2 and x1 - 2, meeting where x0 = +-sqrt(2).
    MPolyQ par(2);
    par.add_term({0, 1}, Rational(1));
    par.add_term({2, 0}, Rational(-1));
    MPolyQ line(2);
    line.add_term({0, 1}, Rational(1));
    line.add_term({0, 0}, Rational(-2));
    std::vector<MPolyQ> polys{par, line};
    auto dec = cad_decompose2(polys);
    check_cell_signs(polys, dec);
    // both polynomials vanish simultaneously in exactly two cells
    long both = 0;
    for (const auto& c : dec.cells)
        if (c.signs[0] == 0 && c.signs[1] == 0) ++both;
    CHECK(both == 2);
}
