#include "dgel/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <vector>

#include "dgel/errors.hpp"

namespace dgel {

enum class Op { constant, var, add, sub, mul, div, pow, neg, sin, cos, exp, abs, sign, min, max };

struct Expr::Node {
    Op op;
    double value = 0.0;     // constant
    std::string name;       // var
    NodePtr a, b;
};

namespace {

using NodePtr = Expr::NodePtr;
using Node = Expr::Node;

NodePtr make_const(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::constant;
    n->value = v;
    return n;
}

NodePtr make_var(const std::string& name) {
    auto n = std::make_shared<Node>();
    n->op = Op::var;
    n->name = name;
    return n;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::constant && n->value == v; }

double apply1(Op op, double a) {
    switch (op) {
        case Op::neg: return -a;
        case Op::sin: return std::sin(a);
        case Op::cos: return std::cos(a);
        case Op::exp: return std::exp(a);
        case Op::abs: return std::fabs(a);
        case Op::sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
        default: throw std::logic_error("apply1: not a unary op");
    }
}

double apply2(Op op, double a, double b) {
    switch (op) {
        case Op::add: return a + b;
        case Op::sub: return a - b;
        case Op::mul: return a * b;
        case Op::div: return a / b;
        case Op::pow: return std::pow(a, b);
        case Op::min: return std::fmin(a, b);
        case Op::max: return std::fmax(a, b);
        default: throw std::logic_error("apply2: not a binary op");
    }
}

NodePtr make1(Op op, NodePtr a) {
    if (a->op == Op::constant) return make_const(apply1(op, a->value));
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    return n;
}

// Light algebraic pruning keeps derivative trees small.  Every rewrite is
// value-exact in IEEE arithmetic for finite operands except dropping 0*f,
// which is the usual symbolic convention.
NodePtr make2(Op op, NodePtr a, NodePtr b) {
    if (a->op == Op::constant && b->op == Op::constant)
        return make_const(apply2(op, a->value, b->value));
    switch (op) {
        case Op::add:
            if (is_const(a, 0.0)) return b;
            if (is_const(b, 0.0)) return a;
            break;
        case Op::sub:
            if (is_const(b, 0.0)) return a;
            break;
        case Op::mul:
            if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
            if (is_const(a, 1.0)) return b;
            if (is_const(b, 1.0)) return a;
            break;
        case Op::div:
            if (is_const(a, 0.0)) return make_const(0.0);
            if (is_const(b, 1.0)) return a;
            break;
        case Op::pow:
            if (is_const(b, 1.0)) return a;
            if (is_const(b, 0.0)) return make_const(1.0);
            break;
        default: break;
    }
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

double eval_node(const Node& n, double x, double y, double t) {
    switch (n.op) {
        case Op::constant: return n.value;
        case Op::var:
            if (n.name == "x") return x;
            if (n.name == "y") return y;
            return t;
        case Op::neg:
        case Op::sin:
        case Op::cos:
        case Op::exp:
        case Op::abs:
        case Op::sign: return apply1(n.op, eval_node(*n.a, x, y, t));
        default: return apply2(n.op, eval_node(*n.a, x, y, t), eval_node(*n.b, x, y, t));
    }
}

NodePtr diff_node(const NodePtr& n, const std::string& var);

NodePtr diff_pow(const NodePtr& base, const NodePtr& expo, const std::string& var) {
    // Only constant exponents are differentiated; that covers every config in
    // the corpus and keeps d(f^g) out of the language.
    if (expo->op != Op::constant)
        throw ManufacturedUnsupported("cannot differentiate f^g with non-constant exponent");
    const double p = expo->value;
    // p * base^(p-1) * base'
    return make2(Op::mul, make_const(p),
                 make2(Op::mul, make2(Op::pow, base, make_const(p - 1.0)), diff_node(base, var)));
}

NodePtr diff_node(const NodePtr& n, const std::string& var) {
    switch (n->op) {
        case Op::constant: return make_const(0.0);
        case Op::var: return make_const(n->name == var ? 1.0 : 0.0);
        case Op::neg: return make1(Op::neg, diff_node(n->a, var));
        case Op::add: return make2(Op::add, diff_node(n->a, var), diff_node(n->b, var));
        case Op::sub: return make2(Op::sub, diff_node(n->a, var), diff_node(n->b, var));
        case Op::mul:
            return make2(Op::add, make2(Op::mul, diff_node(n->a, var), n->b),
                         make2(Op::mul, n->a, diff_node(n->b, var)));
        case Op::div:
            // (a'b - ab') / b^2
            return make2(Op::div,
                         make2(Op::sub, make2(Op::mul, diff_node(n->a, var), n->b),
                               make2(Op::mul, n->a, diff_node(n->b, var))),
                         make2(Op::pow, n->b, make_const(2.0)));
        case Op::pow: return diff_pow(n->a, n->b, var);
        case Op::sin: return make2(Op::mul, make1(Op::cos, n->a), diff_node(n->a, var));
        case Op::cos:
            return make2(Op::mul, make1(Op::neg, make1(Op::sin, n->a)), diff_node(n->a, var));
        case Op::exp: return make2(Op::mul, make1(Op::exp, n->a), diff_node(n->a, var));
        case Op::abs: return make2(Op::mul, make1(Op::sign, n->a), diff_node(n->a, var));
        case Op::sign: return make_const(0.0);  // flat a.e.; kinks are not sampled
        case Op::min:
        case Op::max: throw ManufacturedUnsupported("cannot differentiate min/max");
    }
    throw std::logic_error("diff_node: unreachable");
}

NodePtr subst_node(const NodePtr& n, const std::string& var, const NodePtr& repl) {
    switch (n->op) {
        case Op::constant: return n;
        case Op::var: return n->name == var ? repl : n;
        case Op::neg:
        case Op::sin:
        case Op::cos:
        case Op::exp:
        case Op::abs:
        case Op::sign: return make1(n->op, subst_node(n->a, var, repl));
        default: return make2(n->op, subst_node(n->a, var, repl), subst_node(n->b, var, repl));
    }
}

void collect_vars(const Node& n, std::set<std::string>& out) {
    if (n.op == Op::var) out.insert(n.name);
    if (n.a) collect_vars(*n.a, out);
    if (n.b) collect_vars(*n.b, out);
}

const char* op_name(Op op) {
    switch (op) {
        case Op::sin: return "sin";
        case Op::cos: return "cos";
        case Op::exp: return "exp";
        case Op::abs: return "abs";
        case Op::sign: return "sign";
        case Op::min: return "min";
        case Op::max: return "max";
        default: return "?";
    }
}

void print_node(const Node& n, std::string& out) {
    char buf[32];
    switch (n.op) {
        case Op::constant:
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        case Op::var: out += n.name; return;
        case Op::neg:
            out += "(-";
            print_node(*n.a, out);
            out += ')';
            return;
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div:
        case Op::pow: {
            const char sym = n.op == Op::add ? '+'
                           : n.op == Op::sub ? '-'
                           : n.op == Op::mul ? '*'
                           : n.op == Op::div ? '/' : '^';
            out += '(';
            print_node(*n.a, out);
            out += sym;
            print_node(*n.b, out);
            out += ')';
            return;
        }
        default:
            out += op_name(n.op);
            out += '(';
            print_node(*n.a, out);
            if (n.b) {
                out += ',';
                print_node(*n.b, out);
            }
            out += ')';
            return;
    }
}

// --- recursive-descent parser -------------------------------------------

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigParseError("expression error at position " + std::to_string(pos) + ": " + what +
                               " in \"" + src + "\"");
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr n = parse_term();
        for (;;) {
            if (eat('+')) n = make2(Op::add, n, parse_term());
            else if (eat('-')) n = make2(Op::sub, n, parse_term());
            else return n;
        }
    }

    NodePtr parse_term() {
        NodePtr n = parse_unary();
        for (;;) {
            if (eat('*')) n = make2(Op::mul, n, parse_unary());
            else if (eat('/')) n = make2(Op::div, n, parse_unary());
            else return n;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return make1(Op::neg, parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (eat('^')) return make2(Op::pow, base, parse_unary());  // right-associative
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input");
        const char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (eat('(')) {
            NodePtr n = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        // Literals go through strtod: the nearest IEEE double to the decimal
        // text, independent of locale tweaks (config files never use them).
        const char* begin = src.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos += std::size_t(end - begin);
        return make_const(v);
    }

    NodePtr parse_ident() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        const std::string name = src.substr(start, pos - start);
        if (name == "pi") return make_const(3.14159265358979323846);
        if (name == "x" || name == "y" || name == "t") {
            if (peek() == '(') fail("variable '" + name + "' used as a function");
            return make_var(name);
        }
        static const std::map<std::string, Op> fns = {
            {"sin", Op::sin}, {"cos", Op::cos}, {"exp", Op::exp},
            {"abs", Op::abs}, {"sign", Op::sign}, {"min", Op::min}, {"max", Op::max}};
        auto it = fns.find(name);
        if (it == fns.end()) fail("unknown identifier '" + name + "'");
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr a = parse_expr();
        if (it->second == Op::min || it->second == Op::max) {
            if (!eat(',')) fail("min/max take two arguments");
            NodePtr b = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return make2(it->second, a, b);
        }
        if (!eat(')')) fail("expected ')'");
        return make1(it->second, a);
    }
};

} // namespace

Expr Expr::parse(const std::string& src) {
    Parser p(src);
    NodePtr root = p.parse_expr();
    p.skip_ws();
    if (p.pos != src.size()) p.fail("trailing characters");
    return Expr(std::move(root));
}

Expr Expr::constant(double c) { return Expr(make_const(c)); }
Expr Expr::variable(const std::string& name) { return Expr(make_var(name)); }

double Expr::eval(double x, double y, double t) const {
    if (!root_) throw std::logic_error("eval on empty expression");
    return eval_node(*root_, x, y, t);
}

Expr Expr::derivative(const std::string& var) const { return Expr(diff_node(root_, var)); }

Expr Expr::substitute(const std::string& var, const Expr& replacement) const {
    return Expr(subst_node(root_, var, replacement.root_));
}

std::set<std::string> Expr::variables() const {
    std::set<std::string> out;
    if (root_) collect_vars(*root_, out);
    return out;
}

std::string Expr::to_string() const {
    std::string out;
    if (root_) print_node(*root_, out);
    return out;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(make2(Op::add, a.root_, b.root_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make2(Op::sub, a.root_, b.root_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make2(Op::mul, a.root_, b.root_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make2(Op::div, a.root_, b.root_)); }
Expr Expr::pow(const Expr& exponent) const { return Expr(make2(Op::pow, root_, exponent.root_)); }
Expr Expr::abs(const Expr& a) { return Expr(make1(Op::abs, a.root_)); }

} // namespace dgel
