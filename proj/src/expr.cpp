#include "levi6/expr.hpp"

#include <cctype>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace levi6 {

Chart::Chart(std::array<std::string, 6> n, int orient)
    : names(std::move(n)), orientation(orient) {
    if (orientation != 1 && orientation != -1)
        throw Levi6Error("chart orientation must be +1 or -1");
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            if (names[i] == names[j])
                throw Levi6Error("chart names must be pairwise distinct: '" +
                                 names[i] + "'");
}

int Chart::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < 6; ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

NodePtr mk(Kind k, Rational v, int var, std::string name, int exp, NodePtr a,
           NodePtr b) {
    return std::make_shared<const ExprNode>(
        ExprNode{k, v, var, std::move(name), exp, std::move(a), std::move(b)});
}

Expr binary(Kind k, const Expr& a, const Expr& b) {
    return Expr::from_node(
        mk(k, Rational(0), -1, {}, 0, a.share(), b.share()));
}

Expr unary(Kind k, const Expr& a) {
    return Expr::from_node(mk(k, Rational(0), -1, {}, 0, a.share(), nullptr));
}

}  // namespace

const NodePtr& Expr::zero_node() {
    static const NodePtr z =
        mk(Kind::Const, Rational(0), -1, {}, 0, nullptr, nullptr);
    return z;
}

Expr::Expr(Rational r) {
    if (r.is_zero())
        node_ = zero_node();
    else
        node_ = mk(Kind::Const, r, -1, {}, 0, nullptr, nullptr);
}

Expr Expr::variable(int index, std::string name) {
    return from_node(
        mk(Kind::Var, Rational(0), index, std::move(name), 0, nullptr, nullptr));
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_const_zero()) return b;
    if (b.is_const_zero()) return a;
    if (a.is_const() && b.is_const()) {
        try {
            return Expr(a.node().value + b.node().value);
        } catch (const RationalOverflow&) {}
    }
    return binary(Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (b.is_const_zero()) return a;
    if (a.is_const_zero()) return -b;
    if (a.raw() == b.raw()) return Expr(0);
    if (a.is_const() && b.is_const()) {
        try {
            return Expr(a.node().value - b.node().value);
        } catch (const RationalOverflow&) {}
    }
    return binary(Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_const_zero() || b.is_const_zero()) return Expr(0);
    if (a.is_const_one()) return b;
    if (b.is_const_one()) return a;
    if (a.is_const() && b.is_const()) {
        try {
            return Expr(a.node().value * b.node().value);
        } catch (const RationalOverflow&) {}
    }
    if (a.is_const() && a.node().value == Rational(-1)) return -b;
    if (b.is_const() && b.node().value == Rational(-1)) return -a;
    return binary(Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_const_one()) return a;
    bool b_zero_const = b.is_const() && b.node().value.is_zero();
    if (a.is_const_zero() && !b_zero_const) return Expr(0);
    if (a.is_const() && b.is_const() && !b_zero_const) {
        try {
            return Expr(a.node().value / b.node().value);
        } catch (const RationalOverflow&) {}
    }
    return binary(Kind::Div, a, b);
}

Expr Expr::operator-() const {
    if (is_const()) return Expr(-node_->value);
    if (kind() == Kind::Neg) return from_node(node_->a);
    return unary(Kind::Neg, *this);
}

Expr Expr::pow(const Expr& base, int exponent) {
    if (exponent == 0) return Expr(1);
    if (exponent == 1) return base;
    if (base.is_const()) {
        try {
            return Expr(base.node().value.pow(exponent));
        } catch (const RationalOverflow&) {
        } catch (const std::domain_error&) {
            // 0^negative: keep the node, the error surfaces at evaluation
        }
    }
    if (base.kind() == Kind::Pow) {
        long long e = (long long)base.node().exponent * exponent;
        if (e >= INT32_MIN && e <= INT32_MAX)
            return pow(from_node(base.node().a), static_cast<int>(e));
    }
    return from_node(
        mk(Kind::Pow, Rational(0), -1, {}, exponent, base.share(), nullptr));
}

namespace {

bool perfect_square(std::int64_t v, std::int64_t& root) {
    if (v < 0) return false;
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt((double)v)));
    for (std::int64_t c = (r > 1 ? r - 1 : 0); c <= r + 1; ++c)
        if (c * c == v) { root = c; return true; }
    return false;
}

}  // namespace

Expr Expr::sqrt(const Expr& a) {
    if (a.is_const()) {
        const Rational& r = a.node().value;
        std::int64_t rn = 0, rd = 1;
        if (r.num >= 0 && perfect_square(r.num, rn) && perfect_square(r.den, rd))
            return Expr(Rational(rn, rd));
    }
    return unary(Kind::Sqrt, a);
}

Expr Expr::sin(const Expr& a) {
    if (a.is_const_zero()) return Expr(0);
    return unary(Kind::Sin, a);
}

Expr Expr::cos(const Expr& a) {
    if (a.is_const_zero()) return Expr(1);
    return unary(Kind::Cos, a);
}

Expr Expr::exp(const Expr& a) {
    if (a.is_const_zero()) return Expr(1);
    return unary(Kind::Exp, a);
}

// --- structural equality / size ---

namespace {

bool eq_rec(const ExprNode* x, const ExprNode* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case Kind::Const: return x->value == y->value;
        case Kind::Var: return x->var == y->var;
        case Kind::Pow:
            if (x->exponent != y->exponent) return false;
            break;
        default: break;
    }
    return eq_rec(x->a.get(), y->a.get()) && eq_rec(x->b.get(), y->b.get());
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    return eq_rec(a.raw(), b.raw());
}

std::size_t tree_size(const Expr& e) {
    std::unordered_set<const ExprNode*> seen;
    std::vector<const ExprNode*> stack{e.raw()};
    while (!stack.empty()) {
        const ExprNode* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->a) stack.push_back(n->a.get());
        if (n->b) stack.push_back(n->b.get());
    }
    return seen.size();
}

// --- printing ---

namespace {

// Precedence levels: Add/Sub 1, Mul/Div 2, Neg 3, Pow 4, atoms 5.
int print_prec(const ExprNode* n) {
    switch (n->kind) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        case Kind::Const:
            if (!n->value.is_integer()) return 2;  // prints as n/m
            if (n->value.num < 0) return 3;        // prints as -k
            return 5;
        default: return 5;
    }
}

void print_rec(std::ostream& os, const ExprNode* n, int parent_prec) {
    int prec = print_prec(n);
    bool wrap = prec < parent_prec;
    if (wrap) os << "(";
    switch (n->kind) {
        case Kind::Const: os << n->value.str(); break;
        case Kind::Var: os << n->name; break;
        case Kind::Add:
            print_rec(os, n->a.get(), 1);
            os << " + ";
            print_rec(os, n->b.get(), 2);
            break;
        case Kind::Sub:
            print_rec(os, n->a.get(), 1);
            os << " - ";
            print_rec(os, n->b.get(), 2);
            break;
        case Kind::Mul:
            print_rec(os, n->a.get(), 2);
            os << "*";
            print_rec(os, n->b.get(), 3);
            break;
        case Kind::Div:
            print_rec(os, n->a.get(), 2);
            os << "/";
            print_rec(os, n->b.get(), 3);
            break;
        case Kind::Neg:
            os << "-";
            print_rec(os, n->a.get(), 3);
            break;
        case Kind::Pow:
            print_rec(os, n->a.get(), 5);
            if (n->exponent < 0)
                os << "^(" << n->exponent << ")";
            else
                os << "^" << n->exponent;
            break;
        case Kind::Sqrt: os << "sqrt("; print_rec(os, n->a.get(), 0); os << ")"; break;
        case Kind::Sin: os << "sin("; print_rec(os, n->a.get(), 0); os << ")"; break;
        case Kind::Cos: os << "cos("; print_rec(os, n->a.get(), 0); os << ")"; break;
        case Kind::Exp: os << "exp("; print_rec(os, n->a.get(), 0); os << ")"; break;
    }
    if (wrap) os << ")";
}

}  // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print_rec(os, e.raw(), 0);
    return os.str();
}

// --- parsing ---

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::map<std::string, int>& vars)
        : text_(text), vars_(vars) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    const std::string& text_;
    const std::map<std::string, int>& vars_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_]))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expr parse_sum() {
        Expr e = parse_term();
        for (;;) {
            if (eat('+')) e = e + parse_term();
            else if (eat('-')) e = e - parse_term();
            else return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            if (eat('*')) e = e * parse_factor();
            else if (eat('/')) e = e / parse_factor();
            else return e;
        }
    }

    Expr parse_factor() {
        if (eat('-')) return -parse_factor();
        Expr e = parse_atom();
        if (eat('^')) return Expr::pow(e, parse_exponent());
        return e;
    }

    int parse_exponent() {
        skip_ws();
        bool paren = eat('(');
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        std::size_t start = pos_;
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > INT32_MAX) throw ParseError("exponent too large", start);
            ++pos_;
        }
        if (pos_ == start)
            throw ParseError("expected integer exponent after '^'", pos_);
        if (paren && !eat(')'))
            throw ParseError("expected ')' closing exponent", pos_);
        return static_cast<int>(neg ? -v : v);
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit((unsigned char)c)) return parse_number();
        if (std::isalpha((unsigned char)c) || c == '_') return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr parse_number() {
        std::size_t start = pos_;
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
            v = v * 10 + (text_[pos_] - '0');
            if (v < 0) throw ParseError("integer literal too large", start);
            ++pos_;
        }
        if (pos_ < text_.size() && text_[pos_] == '.')
            throw ParseError("decimal literals are not supported; use n/m",
                             pos_);
        return Expr(v);
    }

    Expr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name == "sqrt" || name == "sin" || name == "cos" || name == "exp") {
            if (!eat('('))
                throw ParseError("expected '(' after function '" + name + "'",
                                 pos_);
            Expr arg = parse_sum();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            if (name == "sqrt") return Expr::sqrt(arg);
            if (name == "sin") return Expr::sin(arg);
            if (name == "cos") return Expr::cos(arg);
            return Expr::exp(arg);
        }
        auto it = vars_.find(name);
        if (it == vars_.end()) throw UnknownIdentifierError(name, start);
        if (it->second < 0)
            throw ParseError("identifier '" + name +
                                 "' may not be used here (solved variable)",
                             start);
        return Expr::variable(it->second, name);
    }
};

}  // namespace

Expr parse_expr(const std::string& text, const std::map<std::string, int>& vars) {
    return Parser(text, vars).parse();
}

Expr parse_expr(const std::string& text, const Chart& chart) {
    std::map<std::string, int> vars;
    for (int i = 0; i < 6; ++i) vars[chart.names[i]] = i;
    return parse_expr(text, vars);
}

// --- differentiation ---

namespace {

Expr diff_rec(const ExprNode* n, int var,
              std::unordered_map<const ExprNode*, Expr>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Expr a = n->a ? Expr::from_node(n->a) : Expr(0);
    Expr b = n->b ? Expr::from_node(n->b) : Expr(0);
    Expr da = n->a ? diff_rec(n->a.get(), var, memo) : Expr(0);
    Expr db = n->b ? diff_rec(n->b.get(), var, memo) : Expr(0);
    Expr r;
    switch (n->kind) {
        case Kind::Const: r = Expr(0); break;
        case Kind::Var: r = Expr(n->var == var ? 1 : 0); break;
        case Kind::Add: r = da + db; break;
        case Kind::Sub: r = da - db; break;
        case Kind::Mul: r = da * b + a * db; break;
        case Kind::Div: r = (da * b - a * db) / (b * b); break;
        case Kind::Neg: r = -da; break;
        case Kind::Pow:
            r = Expr(n->exponent) * Expr::pow(a, n->exponent - 1) * da;
            break;
        case Kind::Sqrt: r = da / (Expr(2) * Expr::sqrt(a)); break;
        case Kind::Sin: r = Expr::cos(a) * da; break;
        case Kind::Cos: r = -(Expr::sin(a) * da); break;
        case Kind::Exp: r = Expr::exp(a) * da; break;
    }
    memo.emplace(n, r);
    return r;
}

}  // namespace

Expr differentiate(const Expr& e, int var) {
    std::unordered_map<const ExprNode*, Expr> memo;
    return diff_rec(e.raw(), var, memo);
}

// --- evaluation ---

namespace {

constexpr double kDivTol = 1e-12;

double eval_rec(const ExprNode* n, const Point& pt,
                std::unordered_map<const ExprNode*, double>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    double r = 0;
    switch (n->kind) {
        case Kind::Const: r = n->value.to_double(); break;
        case Kind::Var: r = pt[static_cast<std::size_t>(n->var)]; break;
        case Kind::Add:
            r = eval_rec(n->a.get(), pt, memo) + eval_rec(n->b.get(), pt, memo);
            break;
        case Kind::Sub:
            r = eval_rec(n->a.get(), pt, memo) - eval_rec(n->b.get(), pt, memo);
            break;
        case Kind::Mul:
            r = eval_rec(n->a.get(), pt, memo) * eval_rec(n->b.get(), pt, memo);
            break;
        case Kind::Div: {
            double den = eval_rec(n->b.get(), pt, memo);
            if (std::abs(den) <= kDivTol)
                throw EvalDomainError("division by zero");
            r = eval_rec(n->a.get(), pt, memo) / den;
            break;
        }
        case Kind::Neg: r = -eval_rec(n->a.get(), pt, memo); break;
        case Kind::Pow: {
            double base = eval_rec(n->a.get(), pt, memo);
            if (n->exponent < 0 && std::abs(base) <= kDivTol)
                throw EvalDomainError("zero base with negative exponent");
            r = std::pow(base, n->exponent);
            break;
        }
        case Kind::Sqrt: {
            double arg = eval_rec(n->a.get(), pt, memo);
            if (arg < 0) throw EvalDomainError("sqrt of negative value");
            r = std::sqrt(arg);
            break;
        }
        case Kind::Sin: r = std::sin(eval_rec(n->a.get(), pt, memo)); break;
        case Kind::Cos: r = std::cos(eval_rec(n->a.get(), pt, memo)); break;
        case Kind::Exp: r = std::exp(eval_rec(n->a.get(), pt, memo)); break;
    }
    if (!std::isfinite(r)) throw EvalDomainError("non-finite value");
    memo.emplace(n, r);
    return r;
}

}  // namespace

double evaluate(const Expr& e, const Point& pt) {
    std::unordered_map<const ExprNode*, double> memo;
    return eval_rec(e.raw(), pt, memo);
}

// --- probabilistic zero test ---

bool is_zero(const Expr& e, const ZeroTestOptions& opts) {
    if (opts.trials < 1) throw Levi6Error("is_zero requires trials >= 1");
    if (e.is_const()) return e.is_const_zero();
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    int valid = 0;
    long long attempts = 0;
    const long long max_attempts =
        (long long)opts.trials + 10LL * opts.trials;
    while (valid < opts.trials && attempts < max_attempts) {
        ++attempts;
        Point pt;
        for (auto& x : pt) x = dist(rng);
        double v;
        try {
            v = evaluate(e, pt);
        } catch (const EvalDomainError&) {
            continue;
        }
        if (std::abs(v) >= opts.tol) return false;
        ++valid;
    }
    if (valid < opts.trials)
        throw InconclusiveZeroTest(
            "zero test inconclusive: only " + std::to_string(valid) + " of " +
            std::to_string(opts.trials) + " sample points were evaluable");
    return true;
}

bool is_zero(const Expr& e, int trials, double tol, std::uint64_t seed) {
    return is_zero(e, ZeroTestOptions{trials, tol, seed});
}

}  // namespace levi6
