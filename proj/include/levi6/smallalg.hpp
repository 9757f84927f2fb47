#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "levi6/expr.hpp"

namespace levi6 {

struct NotSimpleFormError : Levi6Error {
    using Levi6Error::Levi6Error;
};
struct ZeroFormError : Levi6Error {
    using Levi6Error::Levi6Error;
};
struct RankDeficientError : Levi6Error {
    using Levi6Error::Levi6Error;
};
struct InconsistentSystemError : Levi6Error {
    using Levi6Error::Levi6Error;
};

// Complex scalars as explicit (re, im) pairs over an arbitrary ring, so
// the same elimination code serves real, complex and Expr-valued
// matrices.
template <class T>
struct Cx {
    T re{0};
    T im{0};

    Cx() = default;
    Cx(T r) : re(std::move(r)) {}
    Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    Cx conj() const { return {re, -im}; }

    friend Cx operator+(const Cx& a, const Cx& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Cx operator-(const Cx& a, const Cx& b) {
        return {a.re - b.re, a.im - b.im};
    }
    Cx operator-() const { return {-re, -im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator/(const Cx& a, const Cx& b) {
        T n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n,
                (a.im * b.re - a.re * b.im) / n};
    }
    Cx& operator+=(const Cx& o) { *this = *this + o; return *this; }
    Cx& operator-=(const Cx& o) { *this = *this - o; return *this; }
};

using CxExpr = Cx<Expr>;

// --- scalar oracles for pivoting and zero decisions ---

struct RealOps {
    double tol = 1e-9;
    bool is_zero(double x) const { return std::abs(x) <= tol; }
    // below-tolerance entries must not become pivots, or rank decisions
    // would promote elimination residue
    double pivot_score(double x) const {
        return std::abs(x) <= tol ? 0.0 : std::abs(x);
    }
};

struct ComplexOps {
    double tol = 1e-9;
    bool is_zero(const std::complex<double>& x) const {
        return std::abs(x) <= tol;
    }
    double pivot_score(const std::complex<double>& x) const {
        return std::abs(x) <= tol ? 0.0 : std::abs(x);
    }
};

// Pivot preference for symbolic elimination: nonzero constants first,
// then small trees. Zero decisions go through the probabilistic test.
struct ExprOps {
    ZeroTestOptions zt;
    bool is_zero(const Expr& e) const { return levi6::is_zero(e, zt); }
    double pivot_score(const Expr& e) const {
        if (e.is_const())
            return e.is_const_zero() ? 0.0 : 2.0;
        if (is_zero(e)) return 0.0;
        return 1.0 / (1.0 + static_cast<double>(tree_size(e)));
    }
};

struct CxExprOps {
    ExprOps base;
    bool is_zero(const CxExpr& x) const {
        return base.is_zero(x.re) && base.is_zero(x.im);
    }
    double pivot_score(const CxExpr& x) const {
        return base.pivot_score(x.re) + base.pivot_score(x.im);
    }
};

// --- antisymmetric 2-forms on a 4-space ---

// Upper-triangle storage order: (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
template <class T>
struct AntisymForm4 {
    std::array<T, 6> e{};

    static int slot(int i, int j) {
        static constexpr int tab[4][4] = {{-1, 0, 1, 2},
                                          {0, -1, 3, 4},
                                          {1, 3, -1, 5},
                                          {2, 4, 5, -1}};
        return tab[i][j];
    }

    T at(int i, int j) const {
        if (i == j) return T(0);
        T v = e[static_cast<std::size_t>(slot(i, j))];
        return i < j ? v : -v;
    }
    void set(int i, int j, T v) {
        e[static_cast<std::size_t>(slot(i, j))] = (i < j) ? v : -v;
    }

    friend AntisymForm4 operator+(const AntisymForm4& a, const AntisymForm4& b) {
        AntisymForm4 r;
        for (int k = 0; k < 6; ++k) r.e[k] = a.e[k] + b.e[k];
        return r;
    }
    friend AntisymForm4 operator*(const T& s, const AntisymForm4& a) {
        AntisymForm4 r;
        for (int k = 0; k < 6; ++k) r.e[k] = s * a.e[k];
        return r;
    }
};

// Pf = a12 a34 - a13 a24 + a14 a23; Pf(A)^2 = det(A).
template <class T>
T pfaffian(const AntisymForm4<T>& A) {
    return A.e[0] * A.e[5] - A.e[1] * A.e[4] + A.e[2] * A.e[3];
}

// Coefficient of st in Pf(sA + tB); bilinear symmetric polarization.
template <class T>
T polar_pfaffian(const AntisymForm4<T>& A, const AntisymForm4<T>& B) {
    return pfaffian(A + B) - pfaffian(A) - pfaffian(B);
}

// q(s,t) = a s^2 + b s t + c t^2 with discriminant b^2 - 4ac.
template <class T>
struct QuadraticForm {
    T a{0}, b{0}, c{0};
    T discriminant() const { return b * b - T(4) * a * c; }
};

// --- generic Gauss-Jordan elimination ---

template <class T>
using Rows = std::vector<std::vector<T>>;

template <class T>
struct Eliminated {
    Rows<T> rows;                // Jordan form, pivot entries normalized to 1
    std::vector<int> pivot_col;  // pivot column of row r, r < rank
    int rank = 0;
};

// Full pivoting restricted to the first `ncols_pivot` columns; the
// remaining columns ride along (augmented right-hand sides).
template <class T, class Ops>
Eliminated<T> gauss_jordan(Rows<T> m, std::size_t ncols_pivot, const Ops& ops) {
    Eliminated<T> out;
    const std::size_t nrows = m.size();
    std::vector<bool> col_used(ncols_pivot, false);
    std::size_t r = 0;
    while (r < nrows) {
        double best = 0.0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = r; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols_pivot; ++j) {
                if (col_used[j]) continue;
                double s = ops.pivot_score(m[i][j]);
                if (s > best) { best = s; bi = i; bj = j; }
            }
        if (best <= 0.0) break;
        std::swap(m[r], m[bi]);
        col_used[bj] = true;
        T piv = m[r][bj];
        for (auto& x : m[r]) x = x / piv;
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r) continue;
            T f = m[i][bj];
            if (ops.is_zero(f)) continue;
            for (std::size_t j = 0; j < m[i].size(); ++j)
                m[i][j] = m[i][j] - f * m[r][j];
        }
        out.pivot_col.push_back(static_cast<int>(bj));
        ++r;
    }
    out.rows = std::move(m);
    out.rank = static_cast<int>(r);
    return out;
}

// Kernel of a simple antisymmetric 2-form on a 4-space: two independent
// vectors annihilated by contraction. Requires Pf ~ 0 (Pluecker).
template <class T, class Ops>
std::array<std::array<T, 4>, 2> two_form_kernel(const AntisymForm4<T>& w,
                                                const Ops& ops) {
    bool all_zero = true;
    for (const auto& x : w.e)
        if (!ops.is_zero(x)) { all_zero = false; break; }
    if (all_zero) throw ZeroFormError("two_form_kernel: zero form");
    if (!ops.is_zero(pfaffian(w)))
        throw NotSimpleFormError(
            "two_form_kernel: form is not simple (Pfaffian does not vanish)");

    Rows<T> m(4, std::vector<T>(4, T(0)));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = w.at(i, j);
    auto el = gauss_jordan(std::move(m), 4, ops);
    if (el.rank != 2)
        throw NotSimpleFormError("two_form_kernel: unexpected rank " +
                                 std::to_string(el.rank));

    std::array<bool, 4> is_pivot{};
    for (int r = 0; r < el.rank; ++r)
        is_pivot[static_cast<std::size_t>(el.pivot_col[r])] = true;
    std::array<std::array<T, 4>, 2> basis;
    int k = 0;
    for (int f = 0; f < 4; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::array<T, 4> v{T(0), T(0), T(0), T(0)};
        v[static_cast<std::size_t>(f)] = T(1);
        for (int r = 0; r < el.rank; ++r)
            v[static_cast<std::size_t>(el.pivot_col[r])] =
                -el.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(f)];
        basis[static_cast<std::size_t>(k++)] = v;
    }
    return basis;
}

// Solve M x = rhs for an m x n system of full column rank; redundant
// rows are checked for consistency.
template <class T, class Ops>
std::vector<T> solve_linear(const Rows<T>& M, const std::vector<T>& rhs,
                            const Ops& ops) {
    const std::size_t m = M.size();
    if (m == 0) throw Levi6Error("solve_linear: empty system");
    const std::size_t n = M[0].size();
    Rows<T> aug(m, std::vector<T>(n + 1, T(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = M[i][j];
        aug[i][n] = rhs[i];
    }
    auto el = gauss_jordan(std::move(aug), n, ops);
    if (static_cast<std::size_t>(el.rank) < n)
        throw RankDeficientError("solve_linear: rank " +
                                 std::to_string(el.rank) + " < " +
                                 std::to_string(n));
    for (std::size_t i = static_cast<std::size_t>(el.rank); i < m; ++i)
        if (!ops.is_zero(el.rows[i][n]))
            throw InconsistentSystemError("solve_linear: inconsistent system");
    std::vector<T> x(n, T(0));
    for (int r = 0; r < el.rank; ++r)
        x[static_cast<std::size_t>(el.pivot_col[r])] =
            el.rows[static_cast<std::size_t>(r)][n];
    return x;
}

// Square inverse via elimination.
template <class T, std::size_t N, class Ops>
std::array<std::array<T, N>, N> invert(
    const std::array<std::array<T, N>, N>& m, const Ops& ops) {
    Rows<T> aug(N, std::vector<T>(2 * N, T(0)));
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) aug[i][j] = m[i][j];
        aug[i][N + i] = T(1);
    }
    auto el = gauss_jordan(std::move(aug), N, ops);
    if (static_cast<std::size_t>(el.rank) < N)
        throw RankDeficientError("invert: singular matrix");
    std::array<std::array<T, N>, N> inv;
    for (std::size_t r = 0; r < N; ++r) {
        auto row = static_cast<std::size_t>(el.pivot_col[r]);
        for (std::size_t j = 0; j < N; ++j)
            inv[row][j] = el.rows[r][N + j];
    }
    return inv;
}

// --- projective roots of a real binary quadratic ---

using ComplexCovector2 = std::array<std::complex<double>, 2>;

struct RootPair {
    enum class Kind { ComplexPair, RealPair, Degenerate } kind;
    ComplexCovector2 first{}, second{};
    double delta = 0.0;
};

// Roots of q(s,t) = a s^2 + b s t + c t^2 = 0 in projective (s,t),
// normalized so the largest-magnitude coordinate equals 1. Degeneracy
// threshold is relative: |delta| <= tol (|a|+|b|+|c|)^2.
RootPair quadratic_roots(double a, double b, double c, double tol = 1e-9);

}  // namespace levi6
