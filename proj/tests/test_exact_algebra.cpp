#include <doctest.h>

#include <random>

#include <qunimodal/cyclotomic.hpp>
#include <qunimodal/qpoly.hpp>

using namespace qu;

namespace {

std::vector<Int> zmul(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

CycNum random_cyc(long L, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<Rational> c(euler_phi(L));
    for (auto& x : c) x = make_rational(num(rng), den(rng));
    return CycNum::from_coeffs(L, std::move(c));
}

}  // namespace

TEST_CASE("cyclotomic polynomials for small orders") {
    CHECK(cyclotomic_polynomial(1).coeffs == std::vector<Int>{-1, 1});
    // derived by dividing x^6-1 by Phi_1 Phi_2 Phi_3
    CHECK(cyclotomic_polynomial(6).coeffs == std::vector<Int>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12).coeffs == std::vector<Int>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_polynomial(420).degree() == euler_phi(420));
    CHECK(euler_phi(420) == 96);
}

TEST_CASE("product of Phi_d over divisors of L equals x^L - 1") {
    for (long L = 1; L <= 420; ++L) {
        std::vector<Int> prod{Int(1)};
        for (long d = 1; d <= L; ++d)
            if (L % d == 0) prod = zmul(prod, cyclotomic_polynomial(d).coeffs);
        std::vector<Int> expect(L + 1, Int(0));
        expect[0] = -1;
        expect[L] = 1;
        REQUIRE(prod == expect);
    }
}

TEST_CASE("omega power arithmetic") {
    for (long L : {1L, 2L, 6L, 12L, 60L}) {
        CHECK(power_of_omega(0, L) == CycNum(L, Rational(1)));
        CHECK(power_of_omega(L, L) == CycNum(L, Rational(1)));
        for (long a = 0; a < L; ++a)
            for (long b = 0; b < L; ++b)
                CHECK(power_of_omega(a, L) * power_of_omega(b, L) ==
                      power_of_omega((a + b) % L, L));
    }
    // negative exponents normalize into [0, L)
    CHECK(power_of_omega(-1, 6) == power_of_omega(5, 6));
}

TEST_CASE("multiplication reduces modulo Phi_L") {
    // (w + 1)(w - 1) = w^2 - 1 = w - 2 after reduction by w^2 - w + 1
    const long L = 6;
    CycNum w = power_of_omega(1, L);
    CycNum one(L, Rational(1));
    CycNum prod = (w + one) * (w - one);
    CHECK(prod == CycNum::from_coeffs(L, {Rational(-2), Rational(1)}));
    // w * w^5 = 1
    CHECK(w * power_of_omega(5, L) == one);
    // additive identity
    CycNum a = CycNum::from_coeffs(L, {make_rational(3, 2), Rational(-7)});
    CHECK(a + CycNum(L) == a);
}

TEST_CASE("inverse via extended gcd") {
    const long L = 6;
    CycNum one(L, Rational(1));
    CHECK(CycNum(L, Rational(2)).inverse() == CycNum(L, make_rational(1, 2)));
    CycNum w = power_of_omega(1, L);
    CHECK(w * w.inverse() == one);
    CycNum wm1 = w - one;
    CHECK(wm1 * wm1.inverse() == one);
    CHECK_THROWS_AS(CycNum(L).inverse(), std::domain_error);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(20240817);
    for (long L : {6L, 12L, 60L}) {
        for (int iter = 0; iter < 25; ++iter) {
            CycNum a = random_cyc(L, rng), b = random_cyc(L, rng), c = random_cyc(L, rng);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == CycNum(L, Rational(1)));
        }
    }
}

TEST_CASE("reduction of an already-reduced value is the identity") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        CycNum a = random_cyc(60, rng);
        CHECK(CycNum::reduce(60, a.coeffs()) == a);
    }
}

TEST_CASE("linear solve: identity system") {
    const long L = 6;
    std::vector<std::vector<CycNum>> A(3, std::vector<CycNum>(3, CycNum(L)));
    std::vector<CycNum> b;
    std::mt19937 rng(99);
    for (int i = 0; i < 3; ++i) {
        A[i][i] = CycNum(L, Rational(1));
        b.push_back(random_cyc(L, rng));
    }
    CHECK(solve_linear_system(A, b) == b);
}

TEST_CASE("linear solve: ansatz system of the m=3 denominator") {
    // 1/((1-q)(1-q^2)(1-q^3)) with ansatz u1 + u2 k + u3 k^2 + u4 w^{3k} + u5 w^{2k} + u6 w^{4k}
    const long L = 6;
    auto taylor = taylor_inverse(denominator_product({1, 2, 3}), 6);
    std::vector<std::vector<CycNum>> A;
    std::vector<CycNum> rhs;
    for (long k = 0; k < 6; ++k) {
        std::vector<CycNum> row;
        row.push_back(CycNum(L, Rational(1)));
        row.push_back(CycNum(L, Rational(k)));
        row.push_back(CycNum(L, Rational(k * k)));
        row.push_back(power_of_omega(3 * k, L));
        row.push_back(power_of_omega(2 * k, L));
        row.push_back(power_of_omega(4 * k, L));
        A.push_back(std::move(row));
        rhs.push_back(CycNum(L, taylor[k]));
    }
    auto x = solve_linear_system(A, rhs);
    CHECK(x[0] == CycNum(L, make_rational(47, 72)));
    CHECK(x[1] == CycNum(L, make_rational(1, 2)));
    CHECK(x[2] == CycNum(L, make_rational(1, 12)));
    CHECK(x[3] == CycNum(L, make_rational(1, 8)));
    CHECK(x[4] == CycNum(L, make_rational(1, 9)));
    CHECK(x[5] == CycNum(L, make_rational(1, 9)));
}

TEST_CASE("linear solve: random system has zero residual") {
    std::mt19937 rng(31337);
    const long L = 12;
    const int n = 4;
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<std::vector<CycNum>> A(n, std::vector<CycNum>(n, CycNum(L)));
        std::vector<CycNum> b(n, CycNum(L));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) A[i][j] = random_cyc(L, rng);
            b[i] = random_cyc(L, rng);
        }
        std::vector<CycNum> x;
        try {
            x = solve_linear_system(A, b);
        } catch (const std::domain_error&) {
            continue;  // singular random draw
        }
        for (int i = 0; i < n; ++i) {
            CycNum acc(L);
            for (int j = 0; j < n; ++j) acc += A[i][j] * x[j];
            CHECK(acc == b[i]);
        }
    }
}

TEST_CASE("singular matrix reports the failing pivot column") {
    const long L = 6;
    std::vector<std::vector<CycNum>> A(2, std::vector<CycNum>(2, CycNum(L)));
    A[0][0] = CycNum(L, Rational(1));
    A[1][0] = CycNum(L, Rational(2));
    std::vector<CycNum> b(2, CycNum(L, Rational(1)));
    CHECK_THROWS_WITH_AS(solve_linear_system(A, b),
                         doctest::Contains("pivot column 1"), std::domain_error);
}

TEST_CASE("rational serialization round trip") {
    CHECK(to_string(make_rational(-3, 6)) == "-1/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(*parse_rational("-1/2") == make_rational(-1, 2));
    CHECK(*parse_rational("7") == Rational(7));
}
