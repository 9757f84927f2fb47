#pragma once

#include "levi6/distribution.hpp"

namespace levi6 {

struct NotEllipticError : Levi6Error {
    using Levi6Error::Levi6Error;
};

using Mat4 = std::array<std::array<Expr, 4>, 4>;
using Mat2 = std::array<std::array<Expr, 2>, 2>;
using Mat6d = std::array<std::array<double, 6>, 6>;

// H-components of a lift of J on the complement: column alpha holds the
// e-frame coefficients of the correction applied to f_alpha.
using HLift = std::array<std::array<Expr, 2>, 4>;

// Canonical almost complex structure in the frame basis: J e_a uses
// J_H, J f_alpha = (J_Q lift) + K f_alpha with K f_alpha in H.
struct AcsField {
    Mat4 J_H;
    Mat2 J_Q;
    HLift K;
};

struct SymRoot {
    CxExpr psi1, psi2;  // psi = psi1 f1* + psi2 f2*
    SymRoot conj() const { return {psi1.conj(), psi2.conj()}; }
};

// S^c(f_alpha, e_a): comp[c][alpha][a]
struct ObstructionS {
    std::array<std::array<std::array<Expr, 4>, 2>, 2> comp{};
};

// Frame-coefficient components of N over all frame pairs, antisymmetric
// in (i,j).
struct NijenhuisN {
    std::array<std::array<std::array<Expr, 6>, 6>, 6> comp{};
};

struct EllipticOptions {
    double tol = 1e-9;
    ZeroTestOptions zt{};
    ExprOps expr_ops() const { return ExprOps{zt}; }
};

// The root of the Levi quadratic with the (JL)-compatible sign,
// together with the structures it induces on H and Q.
struct EllipticBase {
    SymRoot psi;
    Mat4 J_H;
    Mat2 J_Q;
};

// One root of the conjugate pair (symbolic; requires ellipticity on
// the sample box). The orientation pass picks between it and its
// conjugate.
SymRoot elliptic_root(const QuadraticForm<Expr>& q, const EllipticOptions& opts);

Mat2 j_on_Q(const SymRoot& psi, const EllipticOptions& opts);
Mat4 j_on_H(const SymRoot& psi, const LeviForm& L, const EllipticOptions& opts);

// Sign of det(v1, Jv1, v2, Jv2, f1, Jf1) in chart coordinates at pt.
int orientation_sign(const FrameCalculus& fc, const Mat4& J_H, const Mat2& J_Q,
                     const Point& pt, double tol);

// Root selection by orientation: the candidate whose induced J orients
// the chart positively.
EllipticBase canonical_base(const FrameCalculus& fc, const LeviForm& L,
                            const QuadraticForm<Expr>& q,
                            const std::vector<Point>& pts,
                            const EllipticOptions& opts);

SymRoot canonical_root(const FrameCalculus& fc, const LeviForm& L,
                       const std::vector<Point>& pts,
                       const EllipticOptions& opts);

// max over frame pairs and points of |L(J_H e_a, e_b) - J_Q L(e_a, e_b)|
double check_JL(const LeviForm& L, const Mat4& J_H, const Mat2& J_Q,
                const std::vector<Point>& pts);

// Extension of (J_H, J_Q) to TM: unique correction K with values in H.
// An explicit initial H-part of the lift may be supplied; the result
// must not depend on it.
AcsField extend_j(const FrameCalculus& fc, const LeviForm& L, const Mat4& J_H,
                  const Mat2& J_Q, const EllipticOptions& opts,
                  const HLift* initial_lift = nullptr);

ObstructionS obstruction_S(const FrameCalculus& fc, const AcsField& J);

NijenhuisN nijenhuis(const FrameCalculus& fc, const AcsField& J);

double max_abs_S(const ObstructionS& S, const std::vector<Point>& pts);
double max_abs_N(const NijenhuisN& N, const std::vector<Point>& pts);

bool flatness_verdict(const FrameCalculus& fc, const std::vector<Point>& pts,
                      const EllipticOptions& opts);

// J as an endomorphism in chart coordinates at a point (for canonicity
// comparisons across frames).
Mat6d acs_chart_matrix(const FrameCalculus& fc, const AcsField& J,
                       const Point& pt);

// max |J^2 + I| entry over the frame basis at the given points
double acs_square_residual(const FrameCalculus& fc, const AcsField& J,
                           const std::vector<Point>& pts);

struct EllipticInvariants {
    SymRoot psi;
    AcsField J;
    ObstructionS S;
    NijenhuisN N;
    double jl_residual;
    double max_S;
    double max_N;
    bool flat;
};

EllipticInvariants elliptic_invariants(const FrameCalculus& fc,
                                       const LeviForm& L,
                                       const QuadraticForm<Expr>& q,
                                       const std::vector<Point>& pts,
                                       const EllipticOptions& opts);

}  // namespace levi6
