// Symbolic numerators, dense q-polynomials, and the linear-form utilities.
#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "qunimodal/linear.hpp"
#include "qunimodal/oracle.hpp"
#include "qunimodal/qpoly.hpp"
#include "qunimodal/symbolic_numerator.hpp"

using namespace qu;

TEST_CASE("taylor_inverse basics") {
    // 1/(1-q) = 1 + q + q^2 + ...
    DenseQPolynomial geo({Rational(1), Rational(-1)});
    auto t = taylor_inverse(geo, 8);
    for (auto& c : t) CHECK(c == 1);

    // inverse of 1 + 2q + 3q^2
    DenseQPolynomial p({Rational(1), Rational(2), Rational(3)});
    auto u = taylor_inverse(p, 5);
    // check by multiplying back
    DenseQPolynomial upoly(u);
    auto prod = p * upoly;
    CHECK(prod.at(0) == 1);
    for (long i = 1; i < 5; ++i) CHECK(prod.at(i) == 0);
}

TEST_CASE("taylor_inverse of (q;q)_5 counts partitions into parts <= 5") {
    auto t = taylor_inverse(denominator_product({1, 2, 3, 4, 5}), 40);
    // simple bounded-part partition DP
    std::vector<Int> dp(40, 0);
    dp[0] = 1;
    for (long part = 1; part <= 5; ++part)
        for (long n = part; n < 40; ++n) dp[n] += dp[n - part];
    for (long n = 0; n < 40; ++n) CHECK(t[n] == Rational(dp[n]));
}

TEST_CASE("gaussian numerator m=1 and m=3") {
    auto n1 = expand_gaussian_numerator(1, 1);
    REQUIRE(n1.terms().size() == 2);
    CHECK(n1.terms()[0].weights == std::vector<long>{0});
    CHECK(n1.terms()[0].shift == 0);
    CHECK(n1.terms()[0].coefficient == 1);
    CHECK(n1.terms()[1].weights == std::vector<long>{1});
    CHECK(n1.terms()[1].shift == 1);
    CHECK(n1.terms()[1].coefficient == -1);

    auto n3 = expand_gaussian_numerator(1, 3);
    REQUIRE(n3.terms().size() == 8);
    // 1 - q^{l+1} - q^{l+2} - q^{l+3} + q^{2l+3} + q^{2l+4} + q^{2l+5} - q^{3l+6}
    std::map<std::pair<long, long>, Rational> expect = {
        {{0, 0}, 1},  {{1, 1}, -1}, {{1, 2}, -1}, {{1, 3}, -1},
        {{2, 3}, 1},  {{2, 4}, 1},  {{2, 5}, 1},  {{3, 6}, -1},
    };
    for (const auto& t : n3.terms()) {
        auto it = expect.find({t.weights[0], t.shift});
        REQUIRE(it != expect.end());
        CHECK(t.coefficient == it->second);
    }
}

TEST_CASE("gaussian numerator instantiation matches the polynomial product") {
    for (long m : {2L, 4L, 6L}) {
        for (long l : {3L, 7L}) {
            auto num = expand_gaussian_numerator(1, m);
            auto inst = num.instantiate({l});
            DenseQPolynomial direct = DenseQPolynomial::one();
            for (long i = 1; i <= m; ++i) direct = direct * DenseQPolynomial::one_minus_qpow(l + i);
            for (const auto& [e, c] : inst) CHECK(direct.at(e) == c);
            Rational total(0);
            for (const auto& [e, c] : inst) total += c < 0 ? -c : c;
            Rational dtotal(0);
            for (long i = 0; i <= direct.degree(); ++i)
                dtotal += direct.at(i) < 0 ? -direct.at(i) : direct.at(i);
            CHECK(total == dtotal);
        }
    }
}

TEST_CASE("gaussian identity: numerator over (q;q)_m reproduces the coefficient table") {
    const long l = 5, m = 4;
    auto table = gaussian_coefficients(l, m);
    // table(q) * (q;q)_m == numerator(q^{l+1};q)_m
    DenseQPolynomial tab(std::vector<Rational>(table.coeffs.size()));
    std::vector<Rational> cs;
    for (const auto& c : table.coeffs) cs.emplace_back(Rational(c));
    tab = DenseQPolynomial(cs);
    auto prod = tab * denominator_product({1, 2, 3, 4});
    auto inst = expand_gaussian_numerator(1, m).instantiate({l});
    for (long i = 0; i <= prod.degree() + 2; ++i) {
        auto it = inst.find(i);
        Rational want = it == inst.end() ? Rational(0) : it->second;
        CHECK(prod.at(i) == want);
    }
}

TEST_CASE("sz6 numerator support and instantiation") {
    auto n = build_sz6_numerator();
    std::set<std::vector<long>> weights;
    for (const auto& t : n.terms()) weights.insert(t.weights);
    std::set<std::vector<long>> expect = {
        {0, 0}, {1, 0}, {2, 0}, {3, -2}, {3, -1}, {3, 0},
        {3, 1}, {3, 2}, {4, 0}, {5, 0},  {6, 0},
    };
    CHECK(weights == expect);

    // instantiate at (l, b) = (9, 13) and compare with the oracle difference
    const long l = 9, b = 13;
    auto diff = sz_difference(l, 6, b);
    DenseQPolynomial dp([&] {
        std::vector<Rational> cs;
        for (const auto& c : diff) cs.emplace_back(Rational(c));
        return cs;
    }());
    auto prod = dp * denominator_product({1, 2, 3, 4, 5, 6});
    auto inst = n.instantiate({l, b});
    for (long i = 0; i <= prod.degree() + 2; ++i) {
        auto it = inst.find(i);
        Rational want = it == inst.end() ? Rational(0) : it->second;
        CHECK(prod.at(i) == want);
    }
}

TEST_CASE("sz7 numerator: weight groups and the b1 = lambda1 = 4 pinned group") {
    auto n = build_sz7_numerator(4, 4);
    std::set<long> weights;
    for (const auto& t : n.terms()) weights.insert(t.weights[0]);
    std::set<long> expect = {0, 5, 7, 10, 14, 15, 20, 21, 25, 28, 30, 35};
    CHECK(weights == expect);
    // weight-5 group is -(q^5 + q^6 + ... + q^11) q^{5 l1}
    std::map<long, Rational> g5;
    for (const auto& t : n.terms())
        if (t.weights[0] == 5) g5[t.shift] = t.coefficient;
    REQUIRE(g5.size() == 7);
    for (long s = 5; s <= 11; ++s) {
        REQUIRE(g5.count(s) == 1);
        CHECK(g5[s] == -1);
    }
}

TEST_CASE("sz7 numerator instantiation matches the oracle difference") {
    const long b1 = 2, lambda1 = 3, l1 = 4;
    const long l = 5 * l1 + lambda1;       // 23
    const long b = 7 * l1 + lambda1 - b1;  // 29
    auto n = build_sz7_numerator(b1, lambda1);
    auto diff = sz_difference(l, 7, b);
    DenseQPolynomial dp([&] {
        std::vector<Rational> cs;
        for (const auto& c : diff) cs.emplace_back(Rational(c));
        return cs;
    }());
    auto prod = dp * denominator_product({1, 2, 3, 4, 5, 6, 7});
    auto inst = n.instantiate({l1});
    for (long i = 0; i <= prod.degree() + 2; ++i) {
        auto it = inst.find(i);
        Rational want = it == inst.end() ? Rational(0) : it->second;
        CHECK(prod.at(i) == want);
    }
    CHECK_THROWS_AS(build_sz7_numerator(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_sz7_numerator(0, 5), std::invalid_argument);
}

TEST_CASE("linear forms: arithmetic and affine substitution") {
    // f = 2x + 3y - 1
    LinForm f = Rational(2) * LinForm::var(2, 0) + Rational(3) * LinForm::var(2, 1) -
                LinForm::konst(2, Rational(1));
    CHECK(f.evaluate_int({4, 5}) == 22);
    // x -> 3x' + 1, y -> 2y' + 0
    LinForm g = f.substitute_affine({Rational(3), Rational(2)}, {Rational(1), Rational(0)});
    CHECK(g.evaluate_int({4, 5}) == Rational(2) * 13 + Rational(3) * 10 - 1);
}

TEST_CASE("fourier-motzkin: satisfiability and bounds") {
    // triangle x >= 0, y >= 0, x + y <= 5
    Region tri;
    tri.add_ge(LinForm::var(2, 0));
    tri.add_ge(LinForm::var(2, 1));
    tri.add_ge(LinForm::konst(2, Rational(5)) - LinForm::var(2, 0) - LinForm::var(2, 1));
    CHECK(fm::satisfiable(tri.constraints, 2));

    auto b = fm::maximize(tri, Rational(2) * LinForm::var(2, 0) + LinForm::var(2, 1));
    CHECK(b.feasible);
    CHECK(b.bounded);
    CHECK(b.value == 10);

    auto lo = fm::minimize(tri, LinForm::var(2, 0) - LinForm::var(2, 1));
    CHECK(lo.feasible);
    CHECK(lo.bounded);
    CHECK(lo.value == -5);

    // unbounded ray
    Region ray;
    ray.add_ge(LinForm::var(1, 0));
    auto ub = fm::maximize(ray, LinForm::var(1, 0));
    CHECK(ub.feasible);
    CHECK(!ub.bounded);

    // infeasible system
    Region bad = tri;
    bad.add_ge(LinForm::var(2, 0) - LinForm::konst(2, Rational(9)));
    CHECK(!fm::satisfiable(bad.constraints, 2));
}
