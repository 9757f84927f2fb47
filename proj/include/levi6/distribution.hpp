#pragma once

#include <optional>
#include <vector>

#include "levi6/smallalg.hpp"

namespace levi6 {

struct DegenerateStructureError : Levi6Error {
    using Levi6Error::Levi6Error;
};
struct SingularFrameError : Levi6Error {
    using Levi6Error::Levi6Error;
};
struct DependentFieldsError : Levi6Error {
    using Levi6Error::Levi6Error;
};

struct VectorField {
    std::array<Expr, 6> comp{};

    static VectorField coordinate(int i, const Chart& chart);

    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        VectorField r;
        for (int i = 0; i < 6; ++i) r.comp[i] = a.comp[i] + b.comp[i];
        return r;
    }
    friend VectorField operator-(const VectorField& a, const VectorField& b) {
        VectorField r;
        for (int i = 0; i < 6; ++i) r.comp[i] = a.comp[i] - b.comp[i];
        return r;
    }
    friend VectorField operator*(const Expr& g, const VectorField& v) {
        VectorField r;
        for (int i = 0; i < 6; ++i) r.comp[i] = g * v.comp[i];
        return r;
    }

    std::array<double, 6> at(const Point& pt) const;
};

// [X,Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i)
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

// Chart + frame of H + lift of a basis of Q.
struct Structure6 {
    Chart chart;
    std::array<VectorField, 4> h;  // e1..e4 spanning H
    std::array<VectorField, 2> f;  // f1, f2, complement lift
};

struct LeviForm {
    AntisymForm4<Expr> L1, L2;  // Q-components of [e_a, e_b] on f1, f2
};

enum class StructureClass { Elliptic, Hyperbolic, Degenerate };

struct Classification {
    StructureClass kind;
    double a, b, c, delta;
};

const char* to_string(StructureClass k);

// Symbolic frame calculus: inverts the 6x6 frame matrix once so that
// frame coefficients of arbitrary fields stay exact expression trees.
class FrameCalculus {
public:
    FrameCalculus(Structure6 s, ExprOps ops = {});

    const Structure6& structure() const { return s_; }
    const Chart& chart() const { return s_.chart; }
    const ExprOps& ops() const { return ops_; }

    const VectorField& frame_field(int i) const;  // 0..3 -> e, 4..5 -> f

    // rows of the inverse frame matrix, i.e. the dual coframe
    const std::array<std::array<Expr, 6>, 6>& coframe() const { return finv_; }

    std::array<Expr, 6> coefficients(const VectorField& v) const;
    std::array<Expr, 2> q_coefficients(const VectorField& v) const;

    VectorField from_coefficients(const std::array<Expr, 6>& c) const;

private:
    Structure6 s_;
    ExprOps ops_;
    std::array<std::array<Expr, 6>, 6> finv_;
};

LeviForm levi_form(const FrameCalculus& fc);

// a = Pf(L1), b = polar(L1,L2), c = Pf(L2)
QuadraticForm<Expr> levi_quadratic(const LeviForm& L);

Classification classify(const QuadraticForm<Expr>& q, const Point& pt,
                        double tol = 1e-9);
Classification classify(const FrameCalculus& fc, const Point& pt,
                        double tol = 1e-9);

// Numeric frame-coefficient extraction at a point.
std::array<double, 6> express_in_frame(const VectorField& v,
                                       const Structure6& s, const Point& pt,
                                       double tol = 1e-9);

// True iff all pairwise brackets lie in the pointwise span of the
// fields at every sample point.
bool frobenius_integrable(const std::vector<VectorField>& fields,
                          const std::vector<Point>& pts, double tol = 1e-9);

// Numeric determinant (partial pivoting).
double determinant(std::vector<std::vector<double>> m);

// Numeric rank with absolute entry threshold.
int numeric_rank(std::vector<std::vector<double>> m, double tol);

}  // namespace levi6
