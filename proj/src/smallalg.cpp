#include "levi6/smallalg.hpp"

namespace levi6 {

namespace {

ComplexCovector2 normalize_root(std::complex<double> s,
                                std::complex<double> t) {
    std::complex<double> big = std::abs(s) >= std::abs(t) ? s : t;
    return {s / big, t / big};
}

}  // namespace

RootPair quadratic_roots(double a, double b, double c, double tol) {
    double scale = std::abs(a) + std::abs(b) + std::abs(c);
    RootPair out;
    if (scale == 0.0) {
        out.kind = RootPair::Kind::Degenerate;
        return out;
    }
    double delta = b * b - 4.0 * a * c;
    out.delta = delta;
    if (std::abs(delta) <= tol * scale * scale) {
        out.kind = RootPair::Kind::Degenerate;
        return out;
    }
    std::complex<double> sq = delta >= 0.0
                                  ? std::complex<double>(std::sqrt(delta), 0.0)
                                  : std::complex<double>(0.0, std::sqrt(-delta));
    out.kind = delta < 0.0 ? RootPair::Kind::ComplexPair
                           : RootPair::Kind::RealPair;
    if (std::abs(a) > tol * scale && std::abs(a) >= std::abs(c)) {
        // solve in s with t = 1
        std::complex<double> s1 = (-b + sq) / (2.0 * a);
        std::complex<double> s2 = (-b - sq) / (2.0 * a);
        out.first = normalize_root(s1, 1.0);
        out.second = normalize_root(s2, 1.0);
    } else if (std::abs(c) > tol * scale) {
        // solve in t with s = 1
        std::complex<double> t1 = (-b + sq) / (2.0 * c);
        std::complex<double> t2 = (-b - sq) / (2.0 * c);
        out.first = normalize_root(1.0, t1);
        out.second = normalize_root(1.0, t2);
    } else {
        // a and c both negligible: q ~ b s t with the coordinate roots
        out.first = {1.0, 0.0};
        out.second = {0.0, 1.0};
    }
    return out;
}

}  // namespace levi6
