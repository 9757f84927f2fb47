#include "levi6/distribution.hpp"

#include <cmath>

namespace levi6 {

VectorField VectorField::coordinate(int i, const Chart& chart) {
    (void)chart;
    VectorField v;
    v.comp[static_cast<std::size_t>(i)] = Expr(1);
    return v;
}

std::array<double, 6> VectorField::at(const Point& pt) const {
    std::array<double, 6> r;
    for (int i = 0; i < 6; ++i)
        r[static_cast<std::size_t>(i)] =
            evaluate(comp[static_cast<std::size_t>(i)], pt);
    return r;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    VectorField r;
    for (int i = 0; i < 6; ++i) {
        Expr acc(0);
        for (int j = 0; j < 6; ++j) {
            acc += X.comp[static_cast<std::size_t>(j)] *
                       differentiate(Y.comp[static_cast<std::size_t>(i)], j) -
                   Y.comp[static_cast<std::size_t>(j)] *
                       differentiate(X.comp[static_cast<std::size_t>(i)], j);
        }
        r.comp[static_cast<std::size_t>(i)] = acc;
    }
    return r;
}

FrameCalculus::FrameCalculus(Structure6 s, ExprOps ops)
    : s_(std::move(s)), ops_(ops) {
    std::array<std::array<Expr, 6>, 6> m;
    for (int col = 0; col < 6; ++col) {
        const VectorField& v = col < 4 ? s_.h[static_cast<std::size_t>(col)]
                                       : s_.f[static_cast<std::size_t>(col - 4)];
        for (int row = 0; row < 6; ++row)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                v.comp[static_cast<std::size_t>(row)];
    }
    try {
        finv_ = invert(m, ops_);
    } catch (const RankDeficientError&) {
        throw SingularFrameError("frame matrix is singular on the sample box");
    }
}

const VectorField& FrameCalculus::frame_field(int i) const {
    return i < 4 ? s_.h[static_cast<std::size_t>(i)]
                 : s_.f[static_cast<std::size_t>(i - 4)];
}

std::array<Expr, 6> FrameCalculus::coefficients(const VectorField& v) const {
    std::array<Expr, 6> c;
    for (int i = 0; i < 6; ++i) {
        Expr acc(0);
        for (int j = 0; j < 6; ++j)
            acc += finv_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                   v.comp[static_cast<std::size_t>(j)];
        c[static_cast<std::size_t>(i)] = acc;
    }
    return c;
}

std::array<Expr, 2> FrameCalculus::q_coefficients(const VectorField& v) const {
    std::array<Expr, 2> c;
    for (int i = 0; i < 2; ++i) {
        Expr acc(0);
        for (int j = 0; j < 6; ++j)
            acc += finv_[static_cast<std::size_t>(i + 4)][static_cast<std::size_t>(j)] *
                   v.comp[static_cast<std::size_t>(j)];
        c[static_cast<std::size_t>(i)] = acc;
    }
    return c;
}

VectorField FrameCalculus::from_coefficients(
    const std::array<Expr, 6>& c) const {
    VectorField v;
    for (int i = 0; i < 6; ++i)
        v = v + c[static_cast<std::size_t>(i)] * frame_field(i);
    return v;
}

LeviForm levi_form(const FrameCalculus& fc) {
    LeviForm L;
    const auto& s = fc.structure();
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            VectorField br = lie_bracket(s.h[static_cast<std::size_t>(a)],
                                         s.h[static_cast<std::size_t>(b)]);
            auto q = fc.q_coefficients(br);
            L.L1.set(a, b, q[0]);
            L.L2.set(a, b, q[1]);
        }
    return L;
}

QuadraticForm<Expr> levi_quadratic(const LeviForm& L) {
    return {pfaffian(L.L1), polar_pfaffian(L.L1, L.L2), pfaffian(L.L2)};
}

const char* to_string(StructureClass k) {
    switch (k) {
        case StructureClass::Elliptic: return "elliptic";
        case StructureClass::Hyperbolic: return "hyperbolic";
        default: return "degenerate";
    }
}

Classification classify(const QuadraticForm<Expr>& q, const Point& pt,
                        double tol) {
    double a = evaluate(q.a, pt);
    double b = evaluate(q.b, pt);
    double c = evaluate(q.c, pt);
    double delta = b * b - 4.0 * a * c;
    double scale = std::abs(a) + std::abs(b) + std::abs(c);
    Classification r{StructureClass::Degenerate, a, b, c, delta};
    if (delta < -tol * scale * scale)
        r.kind = StructureClass::Elliptic;
    else if (delta > tol * scale * scale)
        r.kind = StructureClass::Hyperbolic;
    return r;
}

Classification classify(const FrameCalculus& fc, const Point& pt, double tol) {
    return classify(levi_quadratic(levi_form(fc)), pt, tol);
}

std::array<double, 6> express_in_frame(const VectorField& v,
                                       const Structure6& s, const Point& pt,
                                       double tol) {
    Rows<double> m(6, std::vector<double>(6, 0.0));
    for (int col = 0; col < 6; ++col) {
        const VectorField& w = col < 4 ? s.h[static_cast<std::size_t>(col)]
                                       : s.f[static_cast<std::size_t>(col - 4)];
        auto val = w.at(pt);
        for (int row = 0; row < 6; ++row)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                val[static_cast<std::size_t>(row)];
    }
    auto rhs_arr = v.at(pt);
    std::vector<double> rhs(rhs_arr.begin(), rhs_arr.end());
    try {
        auto x = solve_linear(m, rhs, RealOps{tol});
        return {x[0], x[1], x[2], x[3], x[4], x[5]};
    } catch (const RankDeficientError&) {
        throw SingularFrameError("frame singular at sample point");
    }
}

bool frobenius_integrable(const std::vector<VectorField>& fields,
                          const std::vector<Point>& pts, double tol) {
    const std::size_t k = fields.size();
    std::vector<VectorField> brackets;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            brackets.push_back(lie_bracket(fields[i], fields[j]));

    for (const auto& pt : pts) {
        Rows<double> m(6, std::vector<double>(k, 0.0));
        for (std::size_t j = 0; j < k; ++j) {
            auto val = fields[j].at(pt);
            for (int i = 0; i < 6; ++i)
                m[static_cast<std::size_t>(i)][j] = val[static_cast<std::size_t>(i)];
        }
        if (numeric_rank(m, tol) < static_cast<int>(k))
            throw DependentFieldsError(
                "fields are linearly dependent at a sample point");
        for (const auto& br : brackets) {
            auto bval = br.at(pt);
            Rows<double> aug(6, std::vector<double>(k + 1, 0.0));
            double scale = 1.0;
            for (int i = 0; i < 6; ++i) {
                for (std::size_t j = 0; j < k; ++j)
                    aug[static_cast<std::size_t>(i)][j] =
                        m[static_cast<std::size_t>(i)][j];
                aug[static_cast<std::size_t>(i)][k] =
                    bval[static_cast<std::size_t>(i)];
                scale = std::max(scale, std::abs(bval[static_cast<std::size_t>(i)]));
            }
            auto el = gauss_jordan(std::move(aug), k, RealOps{tol});
            for (std::size_t i = static_cast<std::size_t>(el.rank); i < 6; ++i)
                if (std::abs(el.rows[i][k]) > tol * scale) return false;
        }
    }
    return true;
}

double determinant(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (m[p][c] == 0.0) return 0.0;
        if (p != c) { std::swap(m[p], m[c]); det = -det; }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

int numeric_rank(std::vector<std::vector<double>> m, double tol) {
    if (m.empty()) return 0;
    std::size_t ncols = m[0].size();
    auto el = gauss_jordan(std::move(m), ncols, RealOps{tol});
    return el.rank;
}

}  // namespace levi6
