#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "levi6/distribution.hpp"  // determinant() as the brute-force oracle
#include "levi6/smallalg.hpp"

using namespace levi6;

namespace {

AntisymForm4<double> random_form(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    AntisymForm4<double> a;
    for (auto& x : a.e) x = d(rng);
    return a;
}

std::vector<std::vector<double>> as_matrix(const AntisymForm4<double>& a) {
    std::vector<std::vector<double>> m(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = a.at(i, j);
    return m;
}

double contract(const AntisymForm4<double>& w, const std::array<double, 4>& v,
                int j) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += v[i] * w.at(i, j);
    return s;
}

}  // namespace

TEST_CASE("pfaffian on fixed forms") {
    AntisymForm4<double> a;
    a.set(0, 1, 1.0);
    a.set(2, 3, 1.0);
    CHECK(pfaffian(a) == doctest::Approx(1.0));  // e1^e2 + e3^e4

    AntisymForm4<double> b;
    b.set(0, 1, 3.0);  // simple form: Pf = 0
    CHECK(pfaffian(b) == doctest::Approx(0.0));

    AntisymForm4<double> c;
    c.set(0, 2, -1.0);
    c.set(1, 3, -1.0);
    CHECK(pfaffian(c) == doctest::Approx(-1.0));
}

TEST_CASE("pfaffian squared equals the determinant") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        auto a = random_form(rng);
        double pf = pfaffian(a);
        double det = determinant(as_matrix(a));
        CHECK(std::abs(pf * pf - det) <= 1e-10 * (1.0 + std::abs(det)));
    }
}

TEST_CASE("polarization is the st coefficient of Pf(sA + tB)") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        auto a = random_form(rng);
        auto b = random_form(rng);
        double s = 0.7, t = -1.3;
        double lhs = pfaffian(s * a + t * b);
        double rhs =
            s * s * pfaffian(a) + s * t * polar_pfaffian(a, b) + t * t * pfaffian(b);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        CHECK(polar_pfaffian(a, b) == doctest::Approx(polar_pfaffian(b, a)));
    }
}

TEST_CASE("pfaffian transforms by det under basis change") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_form(rng);
        std::vector<std::vector<double>> h(4, std::vector<double>(4));
        for (auto& row : h)
            for (auto& x : row) x = d(rng);
        // b_ij = sum_kl h_ki a_kl h_lj
        AntisymForm4<double> b;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                double s = 0;
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) s += h[k][i] * a.at(k, l) * h[l][j];
                b.set(i, j, s);
            }
        double dh = determinant(h);
        CHECK(pfaffian(b) ==
              doctest::Approx(dh * pfaffian(a)).epsilon(1e-8));
    }
}

TEST_CASE("quadratic roots: definite form") {
    // -s^2 - t^2: roots (1, +-i)
    auto r = quadratic_roots(-1, 0, -1);
    REQUIRE(r.kind == RootPair::Kind::ComplexPair);
    CHECK(r.delta == doctest::Approx(-4.0));
    auto ratio = r.first[1] / r.first[0];
    CHECK(std::abs(ratio.real()) <= 1e-12);
    CHECK(std::abs(std::abs(ratio.imag()) - 1.0) <= 1e-12);
}

TEST_CASE("quadratic roots: split form") {
    // -st: projective roots (1,0) and (0,1)
    auto r = quadratic_roots(0, -1, 0);
    REQUIRE(r.kind == RootPair::Kind::RealPair);
    CHECK(r.delta == doctest::Approx(1.0));
    CHECK(std::abs(r.first[0].imag()) <= 1e-12);
    CHECK(std::abs(r.second[0].imag()) <= 1e-12);
    // the two roots are projectively distinct
    auto cross = r.first[0] * r.second[1] - r.first[1] * r.second[0];
    CHECK(std::abs(cross) > 0.5);
}

TEST_CASE("quadratic roots: degenerate cases") {
    CHECK(quadratic_roots(1, 0, 0).kind == RootPair::Kind::Degenerate);  // s^2
    CHECK(quadratic_roots(1, 2, 1).kind == RootPair::Kind::Degenerate);
    CHECK(quadratic_roots(0, 0, 0).kind == RootPair::Kind::Degenerate);
    // relative threshold: scaling must not change the verdict
    CHECK(quadratic_roots(1e-8, 0, 1e-8).kind == RootPair::Kind::ComplexPair);
}

TEST_CASE("roots satisfy the quadratic") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int i = 0; i < 200; ++i) {
        double a = d(rng), b = d(rng), c = d(rng);
        auto r = quadratic_roots(a, b, c);
        if (r.kind == RootPair::Kind::Degenerate) continue;
        for (const auto& root : {r.first, r.second}) {
            auto q = a * root[0] * root[0] + b * root[0] * root[1] +
                     c * root[1] * root[1];
            CHECK(std::abs(q) <= 1e-8);
        }
    }
}

TEST_CASE("two_form_kernel of a simple form") {
    RealOps ops;
    AntisymForm4<double> w;
    w.set(0, 1, 2.0);  // e1^e2 scaled: kernel = span(e3, e4)
    auto basis = two_form_kernel(w, ops);
    for (const auto& v : basis)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(contract(w, v, j)) <= 1e-12);
    CHECK(std::abs(basis[0][2] * basis[1][3] - basis[0][3] * basis[1][2]) > 0.5);
}

TEST_CASE("two_form_kernel rejects bad forms") {
    RealOps ops;
    AntisymForm4<double> zero;
    CHECK_THROWS_AS(two_form_kernel(zero, ops), ZeroFormError);

    AntisymForm4<double> sympl;
    sympl.set(0, 1, 1.0);
    sympl.set(2, 3, 1.0);  // Pf = 1, not simple
    CHECK_THROWS_AS(two_form_kernel(sympl, ops), NotSimpleFormError);
}

TEST_CASE("two_form_kernel on random decomposable forms") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    RealOps ops{1e-8};
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 4> a, b;
        for (auto& x : a) x = d(rng);
        for (auto& x : b) x = d(rng);
        AntisymForm4<double> w;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) w.set(i, j, a[i] * b[j] - a[j] * b[i]);
        std::array<std::array<double, 4>, 2> basis;
        try {
            basis = two_form_kernel(w, ops);
        } catch (const ZeroFormError&) {
            continue;  // a and b nearly parallel
        }
        for (const auto& v : basis)
            for (int j = 0; j < 4; ++j)
                CHECK(std::abs(contract(w, v, j)) <= 1e-7);
    }
}

TEST_CASE("solve_linear examples") {
    RealOps ops;
    Rows<double> m{{2, 0}, {0, 4}};
    auto x = solve_linear(m, {6, 8}, ops);
    CHECK(x[0] == doctest::Approx(3.0));
    CHECK(x[1] == doctest::Approx(2.0));

    // overdetermined but consistent
    Rows<double> m2{{1, 1}, {1, -1}, {2, 0}};
    auto x2 = solve_linear(m2, {3, 1, 4}, ops);
    CHECK(x2[0] == doctest::Approx(2.0));
    CHECK(x2[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(solve_linear(m2, {3, 1, 5}, ops), InconsistentSystemError);
    Rows<double> sing{{1, 1}, {2, 2}};
    CHECK_THROWS_AS(solve_linear(sing, {1, 2}, ops), RankDeficientError);
}

TEST_CASE("symbolic inverse times matrix is the identity") {
    Chart jet({"x", "y", "u", "v", "p", "s"});
    auto X = [&](int i) { return Expr::variable(i, jet.names[i]); };
    std::array<std::array<Expr, 2>, 2> m{{{Expr(1) + X(0) * X(0), X(1)},
                                          {Expr(0), Expr(2)}}};
    ExprOps ops;
    auto inv = invert<Expr, 2>(m, ops);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Expr s;
            for (int k = 0; k < 2; ++k) s += m[i][k] * inv[k][j];
            CHECK(is_zero(s - Expr(i == j ? 1 : 0)));
        }
}

TEST_CASE("complex expression arithmetic") {
    Chart jet({"x", "y", "u", "v", "p", "s"});
    Expr x = Expr::variable(0, "x");
    CxExpr z{x, Expr(1)};
    CxExpr w = z * z.conj();  // x^2 + 1, real
    CHECK(is_zero(w.im));
    CHECK(is_zero(w.re - (x * x + Expr(1))));
    CxExpr q = z / z;
    CHECK(is_zero(q.re - Expr(1)));
    CHECK(is_zero(q.im));
}
