#include "levi6/elliptic.hpp"

#include <cmath>

namespace levi6 {

namespace {

CxExpr cx(const Expr& re) { return CxExpr(re); }

AntisymForm4<CxExpr> root_contracted_form(const SymRoot& psi,
                                          const LeviForm& L) {
    AntisymForm4<CxExpr> w;
    for (int k = 0; k < 6; ++k)
        w.e[static_cast<std::size_t>(k)] =
            psi.psi1 * cx(L.L1.e[static_cast<std::size_t>(k)]) +
            psi.psi2 * cx(L.L2.e[static_cast<std::size_t>(k)]);
    return w;
}

}  // namespace

SymRoot elliptic_root(const QuadraticForm<Expr>& q,
                      const EllipticOptions& opts) {
    ExprOps ops = opts.expr_ops();
    Expr neg_disc = Expr(4) * q.a * q.c - q.b * q.b;  // -Delta, positive
    if (ops.is_zero(neg_disc))
        throw NotEllipticError("Levi quadratic has a vanishing discriminant");
    Expr r = Expr::sqrt(neg_disc);
    // a s^2 + b s t + c t^2 = 0 solved for s/t (or t/s when a ~ 0)
    if (!ops.is_zero(q.a)) {
        Expr den = Expr(2) * q.a;
        return {CxExpr(-q.b / den, r / den), cx(Expr(1))};
    }
    if (!ops.is_zero(q.c)) {
        Expr den = Expr(2) * q.c;
        return {cx(Expr(1)), CxExpr(-q.b / den, r / den)};
    }
    throw NotEllipticError(
        "Levi quadratic has vanishing s^2 and t^2 coefficients (hyperbolic "
        "or degenerate)");
}

Mat2 j_on_Q(const SymRoot& psi, const EllipticOptions& opts) {
    (void)opts;
    // Solve psi(J_Q f_b) = i psi(f_b) for the real matrix J_Q.
    const Expr &a1 = psi.psi1.re, &b1 = psi.psi1.im;
    const Expr &a2 = psi.psi2.re, &b2 = psi.psi2.im;
    Expr D = a1 * b2 - a2 * b1;
    Mat2 JQ;
    const std::array<std::array<Expr, 2>, 2> rhs = {{{-b1, a1}, {-b2, a2}}};
    for (int beta = 0; beta < 2; ++beta) {
        const Expr& re = rhs[static_cast<std::size_t>(beta)][0];
        const Expr& im = rhs[static_cast<std::size_t>(beta)][1];
        JQ[0][static_cast<std::size_t>(beta)] = (re * b2 - a2 * im) / D;
        JQ[1][static_cast<std::size_t>(beta)] = (a1 * im - re * b1) / D;
    }
    return JQ;
}

Mat4 j_on_H(const SymRoot& psi, const LeviForm& L,
            const EllipticOptions& opts) {
    auto w = root_contracted_form(psi, L);
    CxExprOps cops{opts.expr_ops()};
    auto ker = two_form_kernel(w, cops);

    // Declare the kernel plane the -i eigenspace: J(Re w) = Im w.
    Mat4 P;
    for (int r = 0; r < 4; ++r) {
        P[static_cast<std::size_t>(r)][0] = ker[0][static_cast<std::size_t>(r)].re;
        P[static_cast<std::size_t>(r)][1] = ker[0][static_cast<std::size_t>(r)].im;
        P[static_cast<std::size_t>(r)][2] = ker[1][static_cast<std::size_t>(r)].re;
        P[static_cast<std::size_t>(r)][3] = ker[1][static_cast<std::size_t>(r)].im;
    }
    Mat4 PM;
    for (int r = 0; r < 4; ++r) {
        PM[static_cast<std::size_t>(r)][0] = P[static_cast<std::size_t>(r)][1];
        PM[static_cast<std::size_t>(r)][1] = -P[static_cast<std::size_t>(r)][0];
        PM[static_cast<std::size_t>(r)][2] = P[static_cast<std::size_t>(r)][3];
        PM[static_cast<std::size_t>(r)][3] = -P[static_cast<std::size_t>(r)][2];
    }
    Mat4 Pinv;
    try {
        Pinv = invert(P, opts.expr_ops());
    } catch (const RankDeficientError&) {
        throw NotSimpleFormError(
            "kernel plane does not span H over the reals");
    }
    Mat4 JH;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Expr acc(0);
            for (int k = 0; k < 4; ++k)
                acc += PM[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                       Pinv[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
            JH[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = acc;
        }
    return JH;
}

int orientation_sign(const FrameCalculus& fc, const Mat4& J_H, const Mat2& J_Q,
                     const Point& pt, double tol) {
    std::array<std::array<double, 6>, 6> fr;  // frame field values
    for (int i = 0; i < 6; ++i) fr[static_cast<std::size_t>(i)] = fc.frame_field(i).at(pt);
    std::array<std::array<double, 4>, 4> jh;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            jh[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = evaluate(
                J_H[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], pt);

    auto j_of_h = [&](int idx) {
        std::array<double, 6> v{};
        for (int c = 0; c < 4; ++c)
            for (int i = 0; i < 6; ++i)
                v[static_cast<std::size_t>(i)] +=
                    jh[static_cast<std::size_t>(c)][static_cast<std::size_t>(idx)] *
                    fr[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
        return v;
    };

    std::array<double, 6> v1 = fr[0];
    std::array<double, 6> jv1 = j_of_h(0);

    int v2_idx = -1;
    for (int cand = 1; cand < 4; ++cand) {
        Rows<double> m(6, std::vector<double>(3, 0.0));
        for (int i = 0; i < 6; ++i) {
            m[static_cast<std::size_t>(i)][0] = v1[static_cast<std::size_t>(i)];
            m[static_cast<std::size_t>(i)][1] = jv1[static_cast<std::size_t>(i)];
            m[static_cast<std::size_t>(i)][2] =
                fr[static_cast<std::size_t>(cand)][static_cast<std::size_t>(i)];
        }
        if (numeric_rank(std::move(m), tol) == 3) { v2_idx = cand; break; }
    }
    if (v2_idx < 0) return 0;
    std::array<double, 6> v2 = fr[static_cast<std::size_t>(v2_idx)];
    std::array<double, 6> jv2 = j_of_h(v2_idx);

    double jq00 = evaluate(J_Q[0][0], pt);
    double jq10 = evaluate(J_Q[1][0], pt);
    std::array<double, 6> w = fr[4];
    std::array<double, 6> jw{};
    for (int i = 0; i < 6; ++i)
        jw[static_cast<std::size_t>(i)] =
            jq00 * fr[4][static_cast<std::size_t>(i)] +
            jq10 * fr[5][static_cast<std::size_t>(i)];

    Rows<double> m(6, std::vector<double>(6, 0.0));
    const std::array<std::array<double, 6>, 6> cols{v1, jv1, v2, jv2, w, jw};
    for (int c = 0; c < 6; ++c)
        for (int r = 0; r < 6; ++r)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    double det = determinant(std::move(m));
    if (std::abs(det) <= tol) return 0;
    return det > 0 ? 1 : -1;
}

EllipticBase canonical_base(const FrameCalculus& fc, const LeviForm& L,
                            const QuadraticForm<Expr>& q,
                            const std::vector<Point>& pts,
                            const EllipticOptions& opts) {
    SymRoot psi = elliptic_root(q, opts);
    Mat2 JQ = j_on_Q(psi, opts);
    Mat4 JH = j_on_H(psi, L, opts);

    int sign = 0;
    for (const auto& pt : pts) {
        try {
            sign = orientation_sign(fc, JH, JQ, pt, opts.tol);
        } catch (const EvalDomainError&) {
            continue;
        }
        if (sign != 0) break;
    }
    if (sign == 0)
        throw NumericalError(
            "orientation determinant vanished at every sample point");
    if (sign != fc.chart().orientation) {
        // the conjugate root replaces J by -J
        psi = psi.conj();
        for (auto& row : JH)
            for (auto& x : row) x = -x;
        for (auto& row : JQ)
            for (auto& x : row) x = -x;
    }
    return {psi, JH, JQ};
}

SymRoot canonical_root(const FrameCalculus& fc, const LeviForm& L,
                       const std::vector<Point>& pts,
                       const EllipticOptions& opts) {
    return canonical_base(fc, L, levi_quadratic(L), pts, opts).psi;
}

double check_JL(const LeviForm& L, const Mat4& J_H, const Mat2& J_Q,
                const std::vector<Point>& pts) {
    double worst = 0.0;
    for (const auto& pt : pts) {
        double l1[4][4], l2[4][4], jh[4][4], jq[2][2];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                l1[i][j] = evaluate(L.L1.at(i, j), pt);
                l2[i][j] = evaluate(L.L2.at(i, j), pt);
                jh[i][j] = evaluate(
                    J_H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    pt);
            }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                jq[i][j] = evaluate(
                    J_Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    pt);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double lj[2] = {0.0, 0.0};  // L(J_H e_a, e_b)
                for (int c = 0; c < 4; ++c) {
                    lj[0] += jh[c][a] * l1[c][b];
                    lj[1] += jh[c][a] * l2[c][b];
                }
                double jl[2];  // J_Q L(e_a, e_b)
                jl[0] = jq[0][0] * l1[a][b] + jq[0][1] * l2[a][b];
                jl[1] = jq[1][0] * l1[a][b] + jq[1][1] * l2[a][b];
                worst = std::max(worst, std::abs(lj[0] - jl[0]));
                worst = std::max(worst, std::abs(lj[1] - jl[1]));
            }
    }
    return worst;
}

AcsField extend_j(const FrameCalculus& fc, const LeviForm& L, const Mat4& J_H,
                  const Mat2& J_Q, const EllipticOptions& opts,
                  const HLift* initial_lift) {
    const auto& s = fc.structure();
    ExprOps ops = opts.expr_ops();

    // S~(f_alpha, e_a) for the chosen lift
    std::array<std::array<std::array<Expr, 4>, 2>, 2> st{};  // [beta][alpha][a]
    for (int alpha = 0; alpha < 2; ++alpha) {
        VectorField lift = J_Q[0][static_cast<std::size_t>(alpha)] * s.f[0] +
                           J_Q[1][static_cast<std::size_t>(alpha)] * s.f[1];
        if (initial_lift)
            for (int b = 0; b < 4; ++b)
                lift = lift +
                       (*initial_lift)[static_cast<std::size_t>(b)]
                                      [static_cast<std::size_t>(alpha)] *
                           s.h[static_cast<std::size_t>(b)];
        for (int a = 0; a < 4; ++a) {
            auto q1 = fc.q_coefficients(
                lie_bracket(s.f[static_cast<std::size_t>(alpha)],
                            s.h[static_cast<std::size_t>(a)]));
            auto q2 = fc.q_coefficients(
                lie_bracket(lift, s.h[static_cast<std::size_t>(a)]));
            for (int beta = 0; beta < 2; ++beta) {
                Expr v = q1[static_cast<std::size_t>(beta)];
                for (int gamma = 0; gamma < 2; ++gamma)
                    v += J_Q[static_cast<std::size_t>(beta)]
                             [static_cast<std::size_t>(gamma)] *
                         q2[static_cast<std::size_t>(gamma)];
                st[static_cast<std::size_t>(beta)][static_cast<std::size_t>(alpha)]
                  [static_cast<std::size_t>(a)] = v;
            }
        }
    }

    // L(K f_alpha, e_a) = (S~(f_alpha, J_H e_a) + J_Q S~(f_alpha, e_a)) / 2,
    // an 8x4 system per alpha; redundancy is a consistency check. The
    // right-hand side is J_Q applied to the conjugate-linear projection,
    // which is what makes the final J independent of the initial lift.
    AcsField J{J_H, J_Q, {}};
    for (int alpha = 0; alpha < 2; ++alpha) {
        Rows<Expr> M(8, std::vector<Expr>(4, Expr(0)));
        std::vector<Expr> rhs(8, Expr(0));
        for (int beta = 0; beta < 2; ++beta)
            for (int a = 0; a < 4; ++a) {
                std::size_t row = static_cast<std::size_t>(beta * 4 + a);
                for (int b = 0; b < 4; ++b)
                    M[row][static_cast<std::size_t>(b)] =
                        (beta == 0 ? L.L1 : L.L2).at(b, a);
                Expr sjh(0);  // S~(f_alpha, J_H e_a), component beta
                for (int b = 0; b < 4; ++b)
                    sjh += J_H[static_cast<std::size_t>(b)]
                              [static_cast<std::size_t>(a)] *
                           st[static_cast<std::size_t>(beta)]
                             [static_cast<std::size_t>(alpha)]
                             [static_cast<std::size_t>(b)];
                Expr jqs(0);  // J_Q S~(f_alpha, e_a), component beta
                for (int gamma = 0; gamma < 2; ++gamma)
                    jqs += J_Q[static_cast<std::size_t>(beta)]
                              [static_cast<std::size_t>(gamma)] *
                           st[static_cast<std::size_t>(gamma)]
                             [static_cast<std::size_t>(alpha)]
                             [static_cast<std::size_t>(a)];
                rhs[row] = (sjh + jqs) / Expr(2);
            }
        std::vector<Expr> k;
        try {
            k = solve_linear(M, rhs, ops);
        } catch (const RankDeficientError&) {
            throw NotEllipticError(
                "correction system is rank-deficient: Levi form is not "
                "non-degenerate on the sample box");
        } catch (const InconsistentSystemError&) {
            throw NumericalError(
                "correction system inconsistent: structure is not elliptic "
                "at the working points");
        }
        for (int b = 0; b < 4; ++b) {
            Expr v = k[static_cast<std::size_t>(b)];
            if (initial_lift)
                v += (*initial_lift)[static_cast<std::size_t>(b)]
                                    [static_cast<std::size_t>(alpha)];
            J.K[static_cast<std::size_t>(b)][static_cast<std::size_t>(alpha)] = v;
        }
    }
    return J;
}

ObstructionS obstruction_S(const FrameCalculus& fc, const AcsField& J) {
    const auto& s = fc.structure();
    ObstructionS S;
    for (int alpha = 0; alpha < 2; ++alpha) {
        VectorField jf = J.J_Q[0][static_cast<std::size_t>(alpha)] * s.f[0] +
                         J.J_Q[1][static_cast<std::size_t>(alpha)] * s.f[1];
        for (int b = 0; b < 4; ++b)
            jf = jf + J.K[static_cast<std::size_t>(b)]
                         [static_cast<std::size_t>(alpha)] *
                          s.h[static_cast<std::size_t>(b)];
        for (int a = 0; a < 4; ++a) {
            auto q1 = fc.q_coefficients(
                lie_bracket(s.f[static_cast<std::size_t>(alpha)],
                            s.h[static_cast<std::size_t>(a)]));
            auto q2 = fc.q_coefficients(
                lie_bracket(jf, s.h[static_cast<std::size_t>(a)]));
            for (int c = 0; c < 2; ++c) {
                Expr v = q1[static_cast<std::size_t>(c)];
                for (int gamma = 0; gamma < 2; ++gamma)
                    v += J.J_Q[static_cast<std::size_t>(c)]
                              [static_cast<std::size_t>(gamma)] *
                         q2[static_cast<std::size_t>(gamma)];
                S.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(alpha)]
                      [static_cast<std::size_t>(a)] = v;
            }
        }
    }
    return S;
}

namespace {

std::array<std::array<Expr, 6>, 6> full_j_matrix(const AcsField& J) {
    std::array<std::array<Expr, 6>, 6> m{};
    for (auto& row : m)
        for (auto& x : row) x = Expr(0);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                J.J_H[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int alpha = 0; alpha < 2; ++alpha) {
        for (int b = 0; b < 4; ++b)
            m[static_cast<std::size_t>(b)][static_cast<std::size_t>(4 + alpha)] =
                J.K[static_cast<std::size_t>(b)][static_cast<std::size_t>(alpha)];
        for (int beta = 0; beta < 2; ++beta)
            m[static_cast<std::size_t>(4 + beta)][static_cast<std::size_t>(4 + alpha)] =
                J.J_Q[static_cast<std::size_t>(beta)][static_cast<std::size_t>(alpha)];
    }
    return m;
}

}  // namespace

NijenhuisN nijenhuis(const FrameCalculus& fc, const AcsField& J) {
    auto jm = full_j_matrix(J);
    std::array<VectorField, 6> X, JX;
    for (int i = 0; i < 6; ++i) {
        X[static_cast<std::size_t>(i)] = fc.frame_field(i);
        VectorField v;
        for (int r = 0; r < 6; ++r)
            v = v + jm[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] *
                        fc.frame_field(r);
        JX[static_cast<std::size_t>(i)] = v;
    }
    auto apply_j_coef = [&](const std::array<Expr, 6>& c) {
        std::array<Expr, 6> r;
        for (int i = 0; i < 6; ++i) {
            Expr acc(0);
            for (int k = 0; k < 6; ++k)
                acc += jm[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                       c[static_cast<std::size_t>(k)];
            r[static_cast<std::size_t>(i)] = acc;
        }
        return r;
    };

    NijenhuisN N;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            auto c1 = fc.coefficients(lie_bracket(X[static_cast<std::size_t>(i)],
                                                  X[static_cast<std::size_t>(j)]));
            auto c2 = apply_j_coef(fc.coefficients(lie_bracket(
                JX[static_cast<std::size_t>(i)], X[static_cast<std::size_t>(j)])));
            auto c3 = apply_j_coef(fc.coefficients(lie_bracket(
                X[static_cast<std::size_t>(i)], JX[static_cast<std::size_t>(j)])));
            auto c4 = fc.coefficients(lie_bracket(JX[static_cast<std::size_t>(i)],
                                                  JX[static_cast<std::size_t>(j)]));
            for (int k = 0; k < 6; ++k) {
                Expr v = c1[static_cast<std::size_t>(k)] +
                         c2[static_cast<std::size_t>(k)] +
                         c3[static_cast<std::size_t>(k)] -
                         c4[static_cast<std::size_t>(k)];
                N.comp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                      [static_cast<std::size_t>(k)] = v;
                N.comp[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                      [static_cast<std::size_t>(k)] = -v;
            }
        }
    return N;
}

double max_abs_S(const ObstructionS& S, const std::vector<Point>& pts) {
    double worst = 0.0;
    for (const auto& pt : pts)
        for (const auto& per_c : S.comp)
            for (const auto& per_alpha : per_c)
                for (const auto& e : per_alpha)
                    worst = std::max(worst, std::abs(evaluate(e, pt)));
    return worst;
}

double max_abs_N(const NijenhuisN& N, const std::vector<Point>& pts) {
    double worst = 0.0;
    for (const auto& pt : pts)
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                for (int k = 0; k < 6; ++k)
                    worst = std::max(
                        worst,
                        std::abs(evaluate(
                            N.comp[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)]
                                  [static_cast<std::size_t>(k)],
                            pt)));
    return worst;
}

Mat6d acs_chart_matrix(const FrameCalculus& fc, const AcsField& J,
                       const Point& pt) {
    auto jm = full_j_matrix(J);
    Mat6d F{}, Jm{};
    for (int i = 0; i < 6; ++i) {
        auto col = fc.frame_field(i).at(pt);
        for (int r = 0; r < 6; ++r) {
            F[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] =
                col[static_cast<std::size_t>(r)];
            Jm[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = evaluate(
                jm[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)], pt);
        }
    }
    auto Finv = invert(F, RealOps{1e-12});
    Mat6d out{};
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
            double acc = 0.0;
            for (int k = 0; k < 6; ++k)
                for (int l = 0; l < 6; ++l)
                    acc += F[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                           Jm[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
                           Finv[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)];
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = acc;
        }
    return out;
}

double acs_square_residual(const FrameCalculus& fc, const AcsField& J,
                           const std::vector<Point>& pts) {
    auto jm = full_j_matrix(J);
    double worst = 0.0;
    for (const auto& pt : pts) {
        Mat6d m{};
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = evaluate(
                    jm[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], pt);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) {
                double acc = 0.0;
                for (int k = 0; k < 6; ++k)
                    acc += m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                           m[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
                if (r == c) acc += 1.0;
                worst = std::max(worst, std::abs(acc));
            }
    }
    return worst;
}

EllipticInvariants elliptic_invariants(const FrameCalculus& fc,
                                       const LeviForm& L,
                                       const QuadraticForm<Expr>& q,
                                       const std::vector<Point>& pts,
                                       const EllipticOptions& opts) {
    for (const auto& pt : pts) {
        auto cls = classify(q, pt, opts.tol);
        if (cls.kind != StructureClass::Elliptic)
            throw NotEllipticError(
                std::string("structure is ") + to_string(cls.kind) +
                " at a sample point");
    }
    auto base = canonical_base(fc, L, q, pts, opts);
    EllipticInvariants out;
    out.psi = base.psi;
    out.jl_residual = check_JL(L, base.J_H, base.J_Q, pts);
    out.J = extend_j(fc, L, base.J_H, base.J_Q, opts);
    out.S = obstruction_S(fc, out.J);
    out.N = nijenhuis(fc, out.J);
    out.max_S = max_abs_S(out.S, pts);
    out.max_N = max_abs_N(out.N, pts);
    out.flat = out.max_S <= opts.tol;
    return out;
}

bool flatness_verdict(const FrameCalculus& fc, const std::vector<Point>& pts,
                      const EllipticOptions& opts) {
    auto L = levi_form(fc);
    auto q = levi_quadratic(L);
    return elliptic_invariants(fc, L, q, pts, opts).flat;
}

}  // namespace levi6
