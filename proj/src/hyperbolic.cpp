#include "levi6/hyperbolic.hpp"

#include <cmath>

namespace levi6 {

namespace {

struct RealRoots {
    std::array<Expr, 2> first, second;  // projective (s,t) pairs
};

RealRoots hyperbolic_roots(const QuadraticForm<Expr>& q, const ExprOps& ops) {
    Expr disc = q.b * q.b - Expr(4) * q.a * q.c;
    Expr r = Expr::sqrt(disc);
    if (!ops.is_zero(q.a))
        return {{-q.b + r, Expr(2) * q.a}, {-q.b - r, Expr(2) * q.a}};
    if (!ops.is_zero(q.c))
        return {{Expr(2) * q.c, -q.b + r}, {Expr(2) * q.c, -q.b - r}};
    if (ops.is_zero(q.b))
        throw NotHyperbolicError("Levi quadratic vanishes identically");
    return {{Expr(1), Expr(0)}, {Expr(0), Expr(1)}};
}

AntisymForm4<Expr> contracted(const std::array<Expr, 2>& psi,
                              const LeviForm& L) {
    AntisymForm4<Expr> w;
    for (int k = 0; k < 6; ++k)
        w.e[static_cast<std::size_t>(k)] =
            psi[0] * L.L1.e[static_cast<std::size_t>(k)] +
            psi[1] * L.L2.e[static_cast<std::size_t>(k)];
    return w;
}

std::array<VectorField, 2> kernel_fields(const AntisymForm4<Expr>& w,
                                         const Structure6& s,
                                         const ExprOps& ops) {
    auto ker = two_form_kernel(w, ops);
    std::array<VectorField, 2> out;
    for (int v = 0; v < 2; ++v) {
        VectorField field;
        for (int a = 0; a < 4; ++a)
            field = field + ker[static_cast<std::size_t>(v)]
                               [static_cast<std::size_t>(a)] *
                                s.h[static_cast<std::size_t>(a)];
        out[static_cast<std::size_t>(v)] = field;
    }
    return out;
}

// det of the 6-form columns (xi1, xi2, [xi1,xi2], eta1, eta2, [eta1,eta2])
double orientation_six_form(const std::array<VectorField, 2>& xi,
                            const VectorField& bxi,
                            const std::array<VectorField, 2>& eta,
                            const VectorField& beta, const Point& pt) {
    Rows<double> m(6, std::vector<double>(6, 0.0));
    const std::array<const VectorField*, 6> cols{&xi[0], &xi[1], &bxi,
                                                 &eta[0], &eta[1], &beta};
    for (int c = 0; c < 6; ++c) {
        auto val = cols[static_cast<std::size_t>(c)]->at(pt);
        for (int r = 0; r < 6; ++r)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                val[static_cast<std::size_t>(r)];
    }
    return determinant(std::move(m));
}

}  // namespace

HyperbolicSplitting hyperbolic_splitting(const FrameCalculus& fc,
                                         const LeviForm& L,
                                         const QuadraticForm<Expr>& q,
                                         const std::vector<Point>& pts,
                                         const HyperbolicOptions& opts) {
    const auto& s = fc.structure();
    ExprOps ops = opts.expr_ops();
    // guard before taking sqrt of the discriminant: a negative delta
    // would poison every evaluation downstream
    for (const auto& pt : pts) {
        auto cls = classify(q, pt, opts.tol);
        if (cls.kind != StructureClass::Hyperbolic)
            throw NotHyperbolicError(std::string("structure is ") +
                                     to_string(cls.kind) +
                                     " at a sample point");
    }
    auto roots = hyperbolic_roots(q, ops);

    std::array<std::array<VectorField, 2>, 2> ker;
    try {
        ker[0] = kernel_fields(contracted(roots.first, L), s, ops);
        ker[1] = kernel_fields(contracted(roots.second, L), s, ops);
    } catch (const NotSimpleFormError&) {
        throw NotHyperbolicError(
            "root 2-form is not simple: structure degenerates on the box");
    }

    // transversality: the two kernel planes must span H pointwise
    for (const auto& pt : pts) {
        Rows<double> m(6, std::vector<double>(4, 0.0));
        for (int c = 0; c < 4; ++c) {
            auto val = ker[static_cast<std::size_t>(c / 2)]
                          [static_cast<std::size_t>(c % 2)]
                              .at(pt);
            for (int r = 0; r < 6; ++r)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    val[static_cast<std::size_t>(r)];
        }
        if (numeric_rank(std::move(m), opts.tol) != 4)
            throw DegenerateStructureError(
                "kernel planes are not transverse at a sample point");
    }

    VectorField b0 = lie_bracket(ker[0][0], ker[0][1]);
    VectorField b1 = lie_bracket(ker[1][0], ker[1][1]);

    int plus = -1;
    for (const auto& pt : pts) {
        double det;
        try {
            det = orientation_six_form(ker[0], b0, ker[1], b1, pt);
        } catch (const EvalDomainError&) {
            continue;
        }
        if (std::abs(det) <= opts.tol) continue;
        bool positive = det > 0;
        plus = (positive == (fc.chart().orientation > 0)) ? 0 : 1;
        break;
    }
    if (plus < 0)
        throw NumericalError(
            "orientation 6-form vanished at every sample point");

    HyperbolicSplitting out;
    out.h_plus = ker[static_cast<std::size_t>(plus)];
    out.h_minus = ker[static_cast<std::size_t>(1 - plus)];
    const VectorField& bp = plus == 0 ? b0 : b1;
    const VectorField& bm = plus == 0 ? b1 : b0;
    out.t_plus = {out.h_plus[0], out.h_plus[1], bp};
    out.t_minus = {out.h_minus[0], out.h_minus[1], bm};
    out.q_plus = fc.q_coefficients(bp);
    out.q_minus = fc.q_coefficients(bm);

    for (const auto& pt : pts) {
        double det = evaluate(out.q_plus[0], pt) * evaluate(out.q_minus[1], pt) -
                     evaluate(out.q_plus[1], pt) * evaluate(out.q_minus[0], pt);
        if (std::abs(det) <= opts.tol)
            throw DegenerateStructureError(
                "Q+ and Q- do not span Q at a sample point");
        for (int side = 0; side < 2; ++side) {
            const auto& t = side == 0 ? out.t_plus : out.t_minus;
            Rows<double> m(6, std::vector<double>(3, 0.0));
            for (int c = 0; c < 3; ++c) {
                auto val = t[static_cast<std::size_t>(c)].at(pt);
                for (int r = 0; r < 6; ++r)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        val[static_cast<std::size_t>(r)];
            }
            if (numeric_rank(std::move(m), opts.tol) != 3)
                throw DegenerateStructureError(
                    "T± does not have rank 3 at a sample point");
        }
    }
    return out;
}

ObstructionSpm obstruction_S_pm(const FrameCalculus& fc,
                                const HyperbolicSplitting& split,
                                const HyperbolicOptions& opts) {
    const auto& s = fc.structure();
    ExprOps ops = opts.expr_ops();
    ObstructionSpm out;

    for (int side = 0; side < 2; ++side) {
        const auto& t_own = side == 0 ? split.t_plus : split.t_minus;
        const auto& h_own = side == 0 ? split.h_plus : split.h_minus;
        const auto& h_opp = side == 0 ? split.h_minus : split.h_plus;
        const auto& q_opp = side == 0 ? split.q_minus : split.q_plus;

        VectorField q_lift = q_opp[0] * s.f[0] + q_opp[1] * s.f[1];
        // adapted basis: T± frame, opposite H plane, opposite Q lift
        std::array<std::array<Expr, 6>, 6> B;
        const std::array<const VectorField*, 6> cols{
            &t_own[0], &t_own[1], &t_own[2], &h_opp[0], &h_opp[1], &q_lift};
        for (int c = 0; c < 6; ++c)
            for (int r = 0; r < 6; ++r)
                B[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    cols[static_cast<std::size_t>(c)]
                        ->comp[static_cast<std::size_t>(r)];
        std::array<std::array<Expr, 6>, 6> Binv;
        try {
            Binv = invert(B, ops);
        } catch (const RankDeficientError&) {
            throw SingularFrameError("adapted basis singular");
        }

        auto& target = side == 0 ? out.s_plus : out.s_minus;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) {
                VectorField br = lie_bracket(t_own[static_cast<std::size_t>(i)],
                                             h_own[static_cast<std::size_t>(j)]);
                Expr acc(0);
                for (int k = 0; k < 6; ++k)
                    acc += Binv[5][static_cast<std::size_t>(k)] *
                           br.comp[static_cast<std::size_t>(k)];
                target[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    acc;
            }
    }
    return out;
}

double max_abs_S_pm(const ObstructionSpm& S, const std::vector<Point>& pts) {
    double worst = 0.0;
    for (const auto& pt : pts)
        for (const auto* block : {&S.s_plus, &S.s_minus})
            for (const auto& row : *block)
                for (const auto& e : row)
                    worst = std::max(worst, std::abs(evaluate(e, pt)));
    return worst;
}

HyperbolicInvariants hyperbolic_invariants(const FrameCalculus& fc,
                                           const LeviForm& L,
                                           const QuadraticForm<Expr>& q,
                                           const std::vector<Point>& pts,
                                           const HyperbolicOptions& opts) {
    for (const auto& pt : pts) {
        auto cls = classify(q, pt, opts.tol);
        if (cls.kind != StructureClass::Hyperbolic)
            throw NotHyperbolicError(std::string("structure is ") +
                                     to_string(cls.kind) +
                                     " at a sample point");
    }
    HyperbolicInvariants out;
    out.split = hyperbolic_splitting(fc, L, q, pts, opts);
    out.S = obstruction_S_pm(fc, out.split, opts);
    std::vector<Point> check_pts = pts;
    double mp = 0.0, mm = 0.0;
    for (const auto& pt : check_pts) {
        for (const auto& row : out.S.s_plus)
            for (const auto& e : row)
                mp = std::max(mp, std::abs(evaluate(e, pt)));
        for (const auto& row : out.S.s_minus)
            for (const auto& e : row)
                mm = std::max(mm, std::abs(evaluate(e, pt)));
    }
    out.max_S_plus = mp;
    out.max_S_minus = mm;
    out.t_plus_integrable = frobenius_integrable(
        {out.split.t_plus.begin(), out.split.t_plus.end()}, pts, opts.tol);
    out.t_minus_integrable = frobenius_integrable(
        {out.split.t_minus.begin(), out.split.t_minus.end()}, pts, opts.tol);
    out.flat = mp <= opts.tol && mm <= opts.tol;
    return out;
}

bool hyperbolic_flatness_verdict(const FrameCalculus& fc,
                                 const std::vector<Point>& pts,
                                 const HyperbolicOptions& opts) {
    auto L = levi_form(fc);
    auto q = levi_quadratic(L);
    return hyperbolic_invariants(fc, L, q, pts, opts).flat;
}

}  // namespace levi6
