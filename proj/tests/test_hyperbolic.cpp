#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "levi6/hyperbolic.hpp"
#include "levi6/pde.hpp"

using namespace levi6;

namespace {

std::vector<Point> sample_points(int n, std::uint64_t seed = 51) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-0.4, 0.4);
    std::vector<Point> pts(n);
    for (auto& pt : pts)
        for (auto& x : pt) x = d(rng);
    return pts;
}

struct Model {
    FrameCalculus fc;
    LeviForm L;
    QuadraticForm<Expr> q;

    explicit Model(const SolvedSystem& sys)
        : fc(build_jet_structure(sys)), L(levi_form(fc)), q(levi_quadratic(L)) {}
};

Model flat_model() { return Model({{"u_y", "v_x"}, {"0", "0"}, +1}); }

// does v lie in the pointwise span of the fields?
bool in_span(const std::vector<VectorField>& fields, const VectorField& v,
             const std::vector<Point>& pts) {
    for (const auto& pt : pts) {
        std::vector<std::vector<double>> m;
        for (const auto& f : fields) {
            auto row = f.at(pt);
            m.emplace_back(row.begin(), row.end());
        }
        int base = numeric_rank(m, 1e-9);
        auto row = v.at(pt);
        m.emplace_back(row.begin(), row.end());
        if (numeric_rank(m, 1e-9) != base) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("splitting of the flat model") {
    auto m = flat_model();
    HyperbolicOptions opts;
    auto pts = sample_points(10);
    auto split = hyperbolic_splitting(m.fc, m.L, m.q, pts, opts);

    // chart (x, y, u, v, p, s): the two kernel planes are
    // {D_x, d_p} and {D_y, d_s} in some order
    std::vector<VectorField> plane_x{m.fc.frame_field(0), m.fc.frame_field(2)};
    std::vector<VectorField> plane_y{m.fc.frame_field(1), m.fc.frame_field(3)};
    bool plus_is_x = in_span(plane_x, split.h_plus[0], pts) &&
                     in_span(plane_x, split.h_plus[1], pts);
    bool plus_is_y = in_span(plane_y, split.h_plus[0], pts) &&
                     in_span(plane_y, split.h_plus[1], pts);
    CHECK((plus_is_x || plus_is_y));
    const auto& minus_plane = plus_is_x ? plane_y : plane_x;
    CHECK(in_span(minus_plane, split.h_minus[0], pts));
    CHECK(in_span(minus_plane, split.h_minus[1], pts));

    // H+ and H- together span H
    std::vector<VectorField> all{split.h_plus[0], split.h_plus[1],
                                 split.h_minus[0], split.h_minus[1]};
    for (const auto& pt : pts) {
        std::vector<std::vector<double>> mm;
        for (const auto& f : all) {
            auto row = f.at(pt);
            mm.emplace_back(row.begin(), row.end());
        }
        CHECK(numeric_rank(mm, 1e-9) == 4);
    }
}

TEST_CASE("mixed brackets stay in H") {
    auto m = flat_model();
    HyperbolicOptions opts;
    auto pts = sample_points(10);
    auto split = hyperbolic_splitting(m.fc, m.L, m.q, pts, opts);
    std::vector<VectorField> H{m.fc.frame_field(0), m.fc.frame_field(1),
                               m.fc.frame_field(2), m.fc.frame_field(3)};
    for (const auto& a : split.h_plus)
        for (const auto& b : split.h_minus)
            CHECK(in_span(H, lie_bracket(a, b), pts));
}

TEST_CASE("Q directions are independent") {
    auto m = flat_model();
    HyperbolicOptions opts;
    auto pts = sample_points(10);
    auto split = hyperbolic_splitting(m.fc, m.L, m.q, pts, opts);
    for (const auto& pt : pts) {
        double det = evaluate(split.q_plus[0], pt) * evaluate(split.q_minus[1], pt) -
                     evaluate(split.q_plus[1], pt) * evaluate(split.q_minus[0], pt);
        CHECK(std::abs(det) > 1e-6);
    }
}

TEST_CASE("flat model has vanishing obstructions") {
    auto m = flat_model();
    HyperbolicOptions opts;
    auto pts = sample_points(20);
    auto inv = hyperbolic_invariants(m.fc, m.L, m.q, pts, opts);
    CHECK(inv.max_S_plus <= 1e-12);
    CHECK(inv.max_S_minus <= 1e-12);
    CHECK(inv.t_plus_integrable);
    CHECK(inv.t_minus_integrable);
    CHECK(inv.flat);
}

TEST_CASE("coupled perturbation breaks one side only") {
    auto m = Model({{"u_y", "v_x"}, {"v^2", "0"}, +1});
    HyperbolicOptions opts;
    auto pts = sample_points(20);
    auto inv = hyperbolic_invariants(m.fc, m.L, m.q, pts, opts);
    CHECK_FALSE(inv.flat);

    // exactly one obstruction vanishes, and integrability of T+- tracks it
    bool plus_bad = inv.max_S_plus > 1e-3;
    bool minus_bad = inv.max_S_minus > 1e-3;
    CHECK(plus_bad != minus_bad);
    CHECK(inv.t_plus_integrable == !plus_bad);
    CHECK(inv.t_minus_integrable == !minus_bad);

    // the obstruction is the expected linear function of v on the box
    double worst = plus_bad ? inv.max_S_plus : inv.max_S_minus;
    double expect = 0;
    for (const auto& pt : pts) expect = std::max(expect, 2 * std::abs(pt[3]));
    CHECK(worst == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("obstructions survive descent to another frame") {
    auto m = flat_model();
    HyperbolicOptions opts;
    auto pts = sample_points(10);

    auto s = m.fc.structure();
    Chart jet = s.chart;
    Structure6 s2 = s;
    // mix the H frame and shift the lift into H
    s2.h[0] = s.h[0] + s.h[2];
    s2.h[2] = Expr(2) * s.h[2];
    s2.h[1] = s.h[1] - s.h[3];
    s2.f[0] = s.f[0] + parse_expr("x", jet) * s.h[1];
    FrameCalculus fc2(s2);
    auto L2 = levi_form(fc2);
    auto q2 = levi_quadratic(L2);
    auto inv2 = hyperbolic_invariants(fc2, L2, q2, pts, opts);
    CHECK(inv2.max_S_plus <= 1e-9);
    CHECK(inv2.max_S_minus <= 1e-9);
    CHECK(inv2.flat);
}

TEST_CASE("elliptic input is rejected") {
    Model cr({{"v_x", "v_y"}, {"-u_y", "u_x"}, +1});
    HyperbolicOptions opts;
    auto pts = sample_points(5);
    CHECK_THROWS_AS(hyperbolic_splitting(cr.fc, cr.L, cr.q, pts, opts),
                    NotHyperbolicError);
}
