#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "levi6/rational.hpp"

namespace levi6 {

struct Levi6Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Levi6Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Levi6Error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct UnknownIdentifierError : ParseError {
    std::string name;
    UnknownIdentifierError(const std::string& ident, std::size_t pos)
        : ParseError("unknown identifier '" + ident + "'", pos), name(ident) {}
};

struct EvalDomainError : Levi6Error {
    using Levi6Error::Levi6Error;
};

struct InconclusiveZeroTest : Levi6Error {
    using Levi6Error::Levi6Error;
};

struct NumericalError : Levi6Error {
    using Levi6Error::Levi6Error;
};

// Chart: 6 ordered coordinate names plus an orientation sign for the
// coordinate order.
struct Chart {
    std::array<std::string, 6> names;
    int orientation = +1;

    Chart() = default;
    Chart(std::array<std::string, 6> n, int orient = +1);

    int index_of(const std::string& name) const;  // -1 if absent
};

using Point = std::array<double, 6>;

enum class Kind : std::uint8_t {
    Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Sin, Cos, Exp
};

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    Kind kind;
    Rational value;    // Const
    int var = -1;      // Var: chart index
    std::string name;  // Var: printed name
    int exponent = 0;  // Pow
    NodePtr a, b;
};

// Immutable symbolic scalar field. Smart constructors apply light local
// simplification (constant folding, 0/1 identities) and nothing more;
// semantic zero testing is probabilistic, see is_zero().
class Expr {
public:
    Expr() : node_(zero_node()) {}
    Expr(long long n) : Expr(Rational(n)) {}
    Expr(int n) : Expr(Rational(n)) {}
    explicit Expr(Rational r);

    static Expr variable(int index, std::string name);

    const ExprNode& node() const { return *node_; }
    const ExprNode* raw() const { return node_.get(); }
    NodePtr share() const { return node_; }
    Kind kind() const { return node_->kind; }

    // Internal node factory; prefer the operators and named constructors.
    static Expr from_node(NodePtr n) { return Expr(std::move(n)); }

    bool is_const() const { return node_->kind == Kind::Const; }
    bool is_const_zero() const { return is_const() && node_->value.is_zero(); }
    bool is_const_one() const { return is_const() && node_->value.is_one(); }

    friend Expr operator+(const Expr&, const Expr&);
    friend Expr operator-(const Expr&, const Expr&);
    friend Expr operator*(const Expr&, const Expr&);
    friend Expr operator/(const Expr&, const Expr&);
    Expr operator-() const;
    Expr& operator+=(const Expr& o) { *this = *this + o; return *this; }
    Expr& operator-=(const Expr& o) { *this = *this - o; return *this; }
    Expr& operator*=(const Expr& o) { *this = *this * o; return *this; }

    static Expr pow(const Expr&, int exponent);
    static Expr sqrt(const Expr&);
    static Expr sin(const Expr&);
    static Expr cos(const Expr&);
    static Expr exp(const Expr&);

private:
    explicit Expr(NodePtr n) : node_(std::move(n)) {}
    static const NodePtr& zero_node();

    NodePtr node_;
};

bool structurally_equal(const Expr& a, const Expr& b);
std::size_t tree_size(const Expr& e);

std::string to_string(const Expr& e);

Expr parse_expr(const std::string& text, const Chart& chart);
Expr parse_expr(const std::string& text, const std::map<std::string, int>& vars);

Expr differentiate(const Expr& e, int var);

double evaluate(const Expr& e, const Point& pt);

inline constexpr std::uint64_t kDefaultSeed = 0x6c657669'36ULL;  // "levi6"

struct ZeroTestOptions {
    int trials = 32;
    double tol = 1e-9;
    std::uint64_t seed = kDefaultSeed;
};

// Probabilistic zero test: samples uniform points in [-1/2,1/2]^6,
// resampling on domain errors (giving up after 10x trials resamples).
bool is_zero(const Expr& e, const ZeroTestOptions& opts = {});
bool is_zero(const Expr& e, int trials, double tol,
             std::uint64_t seed = kDefaultSeed);

}  // namespace levi6
