#pragma once

#include "levi6/distribution.hpp"

namespace levi6 {

struct NotHyperbolicError : Levi6Error {
    using Levi6Error::Levi6Error;
};

struct HyperbolicOptions {
    double tol = 1e-9;
    ZeroTestOptions zt{};
    ExprOps expr_ops() const { return ExprOps{zt}; }
};

struct HyperbolicSplitting {
    std::array<VectorField, 2> h_plus, h_minus;
    std::array<Expr, 2> q_plus, q_minus;  // Q-directions in the (f1,f2) basis
    std::array<VectorField, 3> t_plus, t_minus;  // H± frame + [H±,H±] bracket
};

// S+[i][j]: Q- component of [t_plus_i, h_plus_j] mod (T+ ⊕ H-);
// S-[i][j] symmetrically.
struct ObstructionSpm {
    std::array<std::array<Expr, 2>, 3> s_plus{}, s_minus{};
};

// Kernels of the two real-root 2-forms, labelled so the induced 6-form
// orientation matches the chart.
HyperbolicSplitting hyperbolic_splitting(const FrameCalculus& fc,
                                         const LeviForm& L,
                                         const QuadraticForm<Expr>& q,
                                         const std::vector<Point>& pts,
                                         const HyperbolicOptions& opts);

ObstructionSpm obstruction_S_pm(const FrameCalculus& fc,
                                const HyperbolicSplitting& split,
                                const HyperbolicOptions& opts);

double max_abs_S_pm(const ObstructionSpm& S, const std::vector<Point>& pts);

bool hyperbolic_flatness_verdict(const FrameCalculus& fc,
                                 const std::vector<Point>& pts,
                                 const HyperbolicOptions& opts);

struct HyperbolicInvariants {
    HyperbolicSplitting split;
    ObstructionSpm S;
    double max_S_plus;
    double max_S_minus;
    bool t_plus_integrable;
    bool t_minus_integrable;
    bool flat;
};

HyperbolicInvariants hyperbolic_invariants(const FrameCalculus& fc,
                                           const LeviForm& L,
                                           const QuadraticForm<Expr>& q,
                                           const std::vector<Point>& pts,
                                           const HyperbolicOptions& opts);

}  // namespace levi6
