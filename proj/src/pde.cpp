#include "levi6/pde.hpp"

namespace levi6 {

namespace {

constexpr const char* kJetNames[4] = {"u_x", "u_y", "v_x", "v_y"};
constexpr const char* kJetAliases[4] = {"p", "q", "r", "s"};

int jet_index(const std::string& name) {
    for (int i = 0; i < 4; ++i)
        if (name == kJetNames[i] || name == kJetAliases[i]) return i;
    return -1;
}

struct JetLayout {
    std::array<int, 2> solved;    // jet indices of the solved variables
    std::array<int, 2> unsolved;  // jet indices of the chart variables j1, j2
    Chart chart;
    std::array<Expr, 4> jet;  // u_x, u_y, v_x, v_y on the submanifold
};

JetLayout layout(const SolvedSystem& sys) {
    JetLayout out;
    for (int k = 0; k < 2; ++k) {
        int idx = jet_index(sys.solved[static_cast<std::size_t>(k)]);
        if (idx < 0)
            throw PdeInputError("solved variable '" +
                                sys.solved[static_cast<std::size_t>(k)] +
                                "' is not one of u_x, u_y, v_x, v_y");
        out.solved[static_cast<std::size_t>(k)] = idx;
    }
    if (out.solved[0] == out.solved[1])
        throw PdeInputError("solved variables must be distinct");

    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (i != out.solved[0] && i != out.solved[1])
            out.unsolved[static_cast<std::size_t>(n++)] = i;

    out.chart = Chart(
        {"x", "y", "u", "v",
         kJetAliases[out.unsolved[0]], kJetAliases[out.unsolved[1]]},
        sys.orientation);

    // rhs may mention the 6 chart coordinates only; unsolved jet
    // variables are addressable by alias or by full name
    std::map<std::string, int> vars;
    for (int i = 0; i < 4; ++i) vars[out.chart.names[static_cast<std::size_t>(i)]] = i;
    for (int k = 0; k < 2; ++k) {
        vars[kJetAliases[out.unsolved[static_cast<std::size_t>(k)]]] = 4 + k;
        vars[kJetNames[out.unsolved[static_cast<std::size_t>(k)]]] = 4 + k;
    }
    for (int k = 0; k < 2; ++k) {
        vars[kJetNames[out.solved[static_cast<std::size_t>(k)]]] = -1;
        vars[kJetAliases[out.solved[static_cast<std::size_t>(k)]]] = -1;
    }

    for (int k = 0; k < 2; ++k) {
        int idx = out.solved[static_cast<std::size_t>(k)];
        out.jet[static_cast<std::size_t>(idx)] =
            parse_expr(sys.rhs[static_cast<std::size_t>(k)], vars);
    }
    for (int k = 0; k < 2; ++k) {
        int idx = out.unsolved[static_cast<std::size_t>(k)];
        out.jet[static_cast<std::size_t>(idx)] = Expr::variable(
            4 + k, out.chart.names[static_cast<std::size_t>(4 + k)]);
    }
    return out;
}

}  // namespace

Structure6 build_jet_structure(const SolvedSystem& sys) {
    JetLayout lay = layout(sys);
    Structure6 s;
    s.chart = lay.chart;

    VectorField dx, dy;
    dx.comp[0] = Expr(1);
    dx.comp[2] = lay.jet[0];  // u_x
    dx.comp[3] = lay.jet[2];  // v_x
    dy.comp[1] = Expr(1);
    dy.comp[2] = lay.jet[1];  // u_y
    dy.comp[3] = lay.jet[3];  // v_y

    s.h[0] = dx;
    s.h[1] = dy;
    s.h[2] = VectorField::coordinate(4, s.chart);
    s.h[3] = VectorField::coordinate(5, s.chart);
    s.f[0] = VectorField::coordinate(2, s.chart);  // d/du
    s.f[1] = VectorField::coordinate(3, s.chart);  // d/dv
    return s;
}

std::array<Expr, 8> contact_form_pairings(const SolvedSystem& sys) {
    JetLayout lay = layout(sys);
    Structure6 s = build_jet_structure(sys);
    std::array<Expr, 8> out;
    for (int i = 0; i < 4; ++i) {
        const VectorField& v = s.h[static_cast<std::size_t>(i)];
        // theta_u = du - u_x dx - u_y dy
        out[static_cast<std::size_t>(2 * i)] =
            v.comp[2] - lay.jet[0] * v.comp[0] - lay.jet[1] * v.comp[1];
        // theta_v = dv - v_x dx - v_y dy
        out[static_cast<std::size_t>(2 * i + 1)] =
            v.comp[3] - lay.jet[2] * v.comp[0] - lay.jet[3] * v.comp[1];
    }
    return out;
}

}  // namespace levi6
