#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levi6/pde.hpp"

using namespace levi6;

TEST_CASE("definite model chart and frame") {
    auto s = build_jet_structure({{"v_x", "v_y"}, {"-u_y", "u_x"}, +1});
    CHECK(s.chart.names ==
          std::array<std::string, 6>{"x", "y", "u", "v", "p", "q"});
    CHECK(s.chart.orientation == 1);

    Point pt{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    // D_x = d_x + p d_u + v_x d_v with v_x = -u_y = -q
    auto dx = s.h[0].at(pt);
    CHECK(dx[0] == doctest::Approx(1.0));
    CHECK(dx[2] == doctest::Approx(0.5));
    CHECK(dx[3] == doctest::Approx(-0.6));
    // D_y = d_y + q d_u + u_x d_v
    auto dy = s.h[1].at(pt);
    CHECK(dy[1] == doctest::Approx(1.0));
    CHECK(dy[2] == doctest::Approx(0.6));
    CHECK(dy[3] == doctest::Approx(0.5));
    // jet directions and the complement are coordinate fields
    CHECK(s.h[2].at(pt)[4] == doctest::Approx(1.0));
    CHECK(s.h[3].at(pt)[5] == doctest::Approx(1.0));
    CHECK(s.f[0].at(pt)[2] == doctest::Approx(1.0));
    CHECK(s.f[1].at(pt)[3] == doctest::Approx(1.0));
}

TEST_CASE("split model chart uses the unsolved jets") {
    auto s = build_jet_structure({{"u_y", "v_x"}, {"0", "0"}, +1});
    CHECK(s.chart.names ==
          std::array<std::string, 6>{"x", "y", "u", "v", "p", "s"});
    Point pt{0, 0, 0, 0, 0.7, 0.3};
    auto dx = s.h[0].at(pt);
    CHECK(dx[2] == doctest::Approx(0.7));  // u_x = p stays free
    CHECK(dx[3] == doctest::Approx(0.0));  // v_x solved to 0
    auto dy = s.h[1].at(pt);
    CHECK(dy[2] == doctest::Approx(0.0));
    CHECK(dy[3] == doctest::Approx(0.3));  // v_y = s stays free
}

TEST_CASE("aliases name the same jets") {
    auto a = build_jet_structure({{"v_x", "v_y"}, {"-q", "p"}, +1});
    auto b = build_jet_structure({{"r", "s"}, {"-u_y", "u_x"}, +1});
    CHECK(a.chart.names == b.chart.names);
    Point pt{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    for (int i = 0; i < 4; ++i) {
        auto va = a.h[i].at(pt), vb = b.h[i].at(pt);
        for (int k = 0; k < 6; ++k) CHECK(va[k] == doctest::Approx(vb[k]));
    }
}

TEST_CASE("contact forms annihilate the frame") {
    for (auto sys : {SolvedSystem{{"v_x", "v_y"}, {"-u_y", "u_x"}, +1},
                     SolvedSystem{{"u_y", "v_x"}, {"v^2", "0"}, +1},
                     SolvedSystem{{"v_x", "v_y"}, {"-u_y + u^2", "u_x"}, +1}}) {
        auto pairings = contact_form_pairings(sys);
        for (const auto& e : pairings) CHECK(is_zero(e));
    }
}

TEST_CASE("bad systems are rejected") {
    CHECK_THROWS_AS(build_jet_structure({{"v_x", "v_x"}, {"0", "0"}, +1}),
                    PdeInputError);
    CHECK_THROWS_AS(build_jet_structure({{"v_x", "u"}, {"0", "0"}, +1}),
                    PdeInputError);
    // right-hand sides may not mention a solved jet
    CHECK_THROWS_AS(build_jet_structure({{"v_x", "v_y"}, {"v_y", "0"}, +1}),
                    ParseError);
    CHECK_THROWS_AS(build_jet_structure({{"v_x", "v_y"}, {"s", "0"}, +1}),
                    ParseError);
}

TEST_CASE("jet frame matrix is unit triangular") {
    // frame fields and the lift differ from coordinate fields only in
    // the d_u, d_v rows, so the 6x6 frame matrix has unit determinant
    auto s = build_jet_structure(
        {{"u_y", "v_x"}, {"sin(u) + p*s", "exp(v)"}, +1});
    Point pt{0.3, -0.1, 0.2, 0.1, 0.4, -0.2};
    std::vector<std::vector<double>> m(6, std::vector<double>(6));
    for (int i = 0; i < 4; ++i) {
        auto v = s.h[i].at(pt);
        for (int k = 0; k < 6; ++k) m[k][i] = v[k];
    }
    for (int i = 0; i < 2; ++i) {
        auto v = s.f[i].at(pt);
        for (int k = 0; k < 6; ++k) m[k][4 + i] = v[k];
    }
    CHECK(determinant(m) == doctest::Approx(1.0));
}
