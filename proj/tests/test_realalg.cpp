// Univariate polynomial algebra, root isolation, and the algebraic tower.
#include <doctest.h>

#include <random>

#include "qunimodal/algebraic_tower.hpp"
#include "qunimodal/realroots.hpp"
#include "qunimodal/upoly.hpp"

using namespace qu;

namespace {

// Sylvester-matrix resultant over Q, used as an independent oracle.
Rational sylvester_resultant(const QPoly& a, const QPoly& b) {
    const long m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return Rational(0);
    const long N = m + n;
    if (N == 0) return Rational(1);
    std::vector<std::vector<Rational>> M(N, std::vector<Rational>(N, Rational(0)));
    for (long r = 0; r < n; ++r)
        for (long i = 0; i <= m; ++i) M[r][r + i] = a.c[m - i];
    for (long r = 0; r < m; ++r)
        for (long i = 0; i <= n; ++i) M[n + r][r + i] = b.c[n - i];
    // fraction-free-ish Gaussian elimination over Q
    Rational det(1);
    for (long col = 0; col < N; ++col) {
        long piv = -1;
        for (long r = col; r < N; ++r)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det *= M[col][col];
        Rational inv = Rational(1) / M[col][col];
        for (long r = col + 1; r < N; ++r) {
            if (M[r][col] == 0) continue;
            Rational f = M[r][col] * inv;
            for (long cc = col; cc < N; ++cc) M[r][cc] -= f * M[col][cc];
        }
    }
    return det;
}

QPoly random_poly(std::mt19937& rng, long deg) {
    std::uniform_int_distribution<long> d(-5, 5);
    std::vector<Rational> c;
    for (long i = 0; i < deg; ++i) c.emplace_back(d(rng));
    c.emplace_back(d(rng) == 0 ? 1 : d(rng));
    if (c.back() == 0) c.back() = 1;
    return QPoly(std::move(c));
}

}  // namespace

TEST_CASE("subresultant resultant agrees with the Sylvester determinant up to sign") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 30; ++trial) {
        QPoly a = random_poly(rng, 2 + trial % 4);
        QPoly b = random_poly(rng, 1 + trial % 3);
        Rational syl = sylvester_resultant(a, b);
        Rational sub = resultant(a, b);
        bool match = (sub == syl) || (sub == -syl);
        CHECK(match);
    }
    // shared root => resultant zero
    QPoly f(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});   // x^2 - 2
    QPoly g(std::vector<Rational>{Rational(2), Rational(0), Rational(-1)});   // 2 - x^2
    CHECK(resultant(f, g) == 0);
}

TEST_CASE("nested-ring resultant commutes with evaluation") {
    using P1 = UPoly<Rational>;
    using P2 = UPoly<P1>;
    auto c = [](long v) { return P1::constant(Rational(v)); };
    // f = y^2 + (x+1) y + x^2, g = y^2 - x
    P2 f(std::vector<P1>{P1(std::vector<Rational>{Rational(0), Rational(0), Rational(1)}),
                         P1(std::vector<Rational>{Rational(1), Rational(1)}), c(1)});
    P2 g(std::vector<P1>{P1(std::vector<Rational>{Rational(0), Rational(-1)}), c(0), c(1)});
    P1 res_xy = resultant(f, g);
    for (long x : {-3L, -1L, 0L, 2L, 5L}) {
        auto eval2 = [&](const P2& p) {
            std::vector<Rational> cs;
            for (const auto& coef : p.c) cs.push_back(evaluate_q(coef, Rational(x)));
            return QPoly(std::move(cs));
        };
        Rational direct = sylvester_resultant(eval2(f), eval2(g));
        Rational lifted = evaluate_q(res_xy, Rational(x));
        bool match = (lifted == direct) || (lifted == -direct);
        CHECK(match);
    }
}

TEST_CASE("gcd, squarefree part, and Sturm counting") {
    QPoly x2m2(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});
    QPoly xm1(std::vector<Rational>{Rational(-1), Rational(1)});
    QPoly p = x2m2 * x2m2 * xm1;
    CHECK(squarefree_part(p) == monic(x2m2 * xm1));
    CHECK(gcd_poly(p, x2m2) == monic(x2m2));
    auto st = sturm_sequence(squarefree_part(p));
    CHECK(sturm_count(st, Rational(-10), Rational(10)) == 3);
    CHECK(sturm_count(st, Rational(0), Rational(10)) == 2);
}

TEST_CASE("real root isolation") {
    // (x^2 - 2)(x - 1): roots -sqrt2, 1, sqrt2
    QPoly p(std::vector<Rational>{Rational(2), Rational(-2), Rational(-1), Rational(1)});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 3);
    AlgebraicNumber r0(p, roots[0]), r1(p, roots[1]), r2(p, roots[2]);
    CHECK(compare(r0, AlgebraicNumber::from_rational(Rational(-1))) < 0);
    CHECK(compare(r1, AlgebraicNumber::from_rational(Rational(1))) == 0);
    CHECK(compare(r2, AlgebraicNumber::from_rational(Rational(1))) > 0);

    // x^2 + 1: no real roots
    QPoly q(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
    CHECK(isolate_real_roots(q).empty());

    // product of (x - i), i = 1..8
    QPoly w = QPoly::constant(Rational(1));
    for (long i = 1; i <= 8; ++i)
        w = w * QPoly(std::vector<Rational>{Rational(-i), Rational(1)});
    auto wr = isolate_real_roots(w);
    REQUIRE(wr.size() == 8);
    for (long i = 0; i < 8; ++i) {
        AlgebraicNumber a(w, wr[i]);
        CHECK(compare(a, AlgebraicNumber::from_rational(Rational(i + 1))) == 0);
    }
}

TEST_CASE("algebraic number signs and comparisons") {
    QPoly x2m2(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});
    auto roots = isolate_real_roots(x2m2);
    REQUIRE(roots.size() == 2);
    AlgebraicNumber sqrt2(x2m2, roots[1]);
    QPoly x2m3(std::vector<Rational>{Rational(-3), Rational(0), Rational(1)});
    CHECK(sqrt2.sign_of(x2m3) == -1);  // 2 - 3 < 0
    CHECK(sqrt2.sign_of(x2m2) == 0);
    QPoly x(std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(sqrt2.sign_of(x) == 1);

    AlgebraicNumber sqrt3(x2m3, isolate_real_roots(x2m3)[1]);
    CHECK(compare(sqrt2, sqrt3) < 0);
    // same number from a larger defining polynomial
    QPoly big = x2m2 * QPoly(std::vector<Rational>{Rational(-5), Rational(1)});
    auto broots = isolate_real_roots(big);
    REQUIRE(broots.size() == 3);
    AlgebraicNumber sqrt2b(big, broots[1]);
    CHECK(compare(sqrt2, sqrt2b) == 0);
}

TEST_CASE("tower level 2: arithmetic over Q(sqrt 2)") {
    QPoly x2m2(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});
    auto var = std::make_shared<TowerVar>(x2m2, isolate_real_roots(x2m2)[1]);
    RelPoly<CtxAlg> k1{CtxAlg(var)};

    // f(y) = y^2 - a has the two real roots +-2^{1/4}
    UPoly<QPoly> f(std::vector<QPoly>{QPoly(std::vector<Rational>{Rational(0), Rational(-1)}),
                                      QPoly(), QPoly::constant(Rational(1))});
    auto roots = k1.isolate(f);
    REQUIRE(roots.size() == 2);
    // sign of y^3 at the positive root is +
    UPoly<QPoly> y3(std::vector<QPoly>{QPoly(), QPoly(), QPoly(),
                                       QPoly::constant(Rational(1))});
    CHECK(k1.sign_at_root(f, roots[1], y3) == 1);
    CHECK(k1.sign_at_root(f, roots[0], y3) == -1);
    // y^4 - 2 vanishes at both
    UPoly<QPoly> y4m2(std::vector<QPoly>{QPoly::constant(Rational(-2)), QPoly(), QPoly(), QPoly(),
                                         QPoly::constant(Rational(1))});
    CHECK(k1.sign_at_root(f, roots[0], y4m2) == 0);
    CHECK(k1.sign_at_root(f, roots[1], y4m2) == 0);
}

TEST_CASE("tower: dynamic splitting of a reducible defining polynomial") {
    QPoly x2m2(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});
    QPoly x2m3(std::vector<Rational>{Rational(-3), Rational(0), Rational(1)});
    QPoly p = x2m2 * x2m3;
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 4);
    // roots sorted: -sqrt3, -sqrt2, sqrt2, sqrt3; pick sqrt2
    auto var = std::make_shared<TowerVar>(p, roots[2]);
    CtxAlg ctx(var);
    // inverting a^2 - 3 (= -1 at sqrt2) forces the split p -> x^2 - 2
    QPoly inv = ctx.inv(x2m3);
    CHECK(var->defining().degree() == 2);
    QPoly check = ctx.reduce(inv * x2m3);
    CHECK(check == QPoly::constant(Rational(1)));
    CHECK(ctx.sign_of(x2m3) == -1);
}

TEST_CASE("tower level 3: Q(sqrt2)(2^{1/4})") {
    QPoly x2m2(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});
    auto var = std::make_shared<TowerVar>(x2m2, isolate_real_roots(x2m2)[1]);
    RelPoly<CtxAlg> k1{CtxAlg(var)};
    UPoly<QPoly> p2(std::vector<QPoly>{QPoly(std::vector<Rational>{Rational(0), Rational(-1)}),
                                       QPoly(), QPoly::constant(Rational(1))});  // y^2 - a
    auto broots = k1.isolate(p2);
    REQUIRE(broots.size() == 2);
    CtxAlg2 ctx2(var, p2, broots[1]);  // b = 2^{1/4}
    RelPoly<CtxAlg2> k2{ctx2};

    using E2 = UPoly<QPoly>;
    auto e2const = [](const Rational& r) { return E2::constant(QPoly::constant(r)); };
    // y^4 - 2 is zero in the tower
    E2 y4m2(std::vector<QPoly>{QPoly::constant(Rational(-2)), QPoly(), QPoly(), QPoly(),
                               QPoly::constant(Rational(1))});
    CHECK(ctx2.sign_of(y4m2) == 0);
    // y^3 - 1 > 0 at b ~ 1.19
    E2 y3m1(std::vector<QPoly>{QPoly::constant(Rational(-1)), QPoly(), QPoly(),
                               QPoly::constant(Rational(1))});
    CHECK(ctx2.sign_of(y3m1) == 1);
    // inverse of (y - 1)
    E2 ym1(std::vector<QPoly>{QPoly::constant(Rational(-1)), QPoly::constant(Rational(1))});
    E2 inv = ctx2.inv(ym1);
    E2 prod = ctx2.reduce(ym1 * inv);
    CHECK(ctx2.sign_of(prod - e2const(Rational(1))) == 0);

    // level-3 polynomial z^2 - b: isolate the roots +-2^{1/8}
    using E3 = UPoly<E2>;
    E3 z2mb(std::vector<E2>{E2(std::vector<QPoly>{QPoly(), QPoly::constant(Rational(-1))}),
                            E2(), e2const(Rational(1))});
    auto groots = k2.isolate(z2mb);
    REQUIRE(groots.size() == 2);
    // z^8 - 2 vanishes at the positive root, z - 2 is negative there
    E3 z8m2 = E3::constant(e2const(Rational(-2)));
    {
        std::vector<E2> cs(9, E2());
        cs[0] = e2const(Rational(-2));
        cs[8] = e2const(Rational(1));
        z8m2 = E3(std::move(cs));
    }
    CHECK(k2.sign_at_root(z2mb, groots[1], z8m2) == 0);
    E3 zm2(std::vector<E2>{e2const(Rational(-2)), e2const(Rational(1))});
    CHECK(k2.sign_at_root(z2mb, groots[1], zm2) == -1);
    CHECK(k2.sign_at_root(z2mb, groots[0], zm2) == -1);
}
