#pragma once

#include <memory>
#include <set>
#include <string>

namespace dgel {

/// Tiny expression language used by config files for coefficients, data and
/// flux components.  Grammar, precedence and the bit-exact evaluation rules
/// are documented in docs/expressions.md.
///
/// Variables: x, y (space), t (flux argument).  Functions: sin, cos, exp,
/// abs, sign, min, max.  Operators: + - * / and right-associative ^.
class Expr {
  public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    Expr() = default;

    /// Parses source text; throws ConfigParseError with a character position
    /// on malformed input.
    static Expr parse(const std::string& src);
    static Expr constant(double c);
    static Expr variable(const std::string& name);

    bool empty() const { return !root_; }
    double eval(double x, double y, double t = 0.0) const;

    /// Symbolic partial derivative.  Throws ManufacturedUnsupported when the
    /// expression contains min/max (no usable branch derivative).
    Expr derivative(const std::string& var) const;

    /// Replaces every occurrence of a variable by another expression.
    Expr substitute(const std::string& var, const Expr& replacement) const;

    std::set<std::string> variables() const;
    std::string to_string() const;

    // Arithmetic on ASTs, used to build manufactured right-hand sides.
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr pow(const Expr& exponent) const;
    static Expr abs(const Expr& a);

  private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

} // namespace dgel
