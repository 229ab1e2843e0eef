#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace mge {

/// Immutable expression tree in the single variable t. Copies share nodes.
///
/// Built from the primitives constant(c), sin(a t), cos(a t), exp(a t) and
/// (1 + t)^p, closed under + - * /. The parser accepts the slightly wider
/// infix grammar used in scenario files: `t`, numeric literals, unary minus,
/// `+ - * /`, parentheses and the calls sin(x), cos(x), exp(x), pow(x, y).
class SignalExpr {
public:
    enum class Op { Const, Time, Neg, Add, Sub, Mul, Div, Sin, Cos, Exp, Pow };

    SignalExpr();  // constant 0

    static SignalExpr constant(double c);
    static SignalExpr time();
    static SignalExpr sin_of(double a);   // sin(a t)
    static SignalExpr cos_of(double a);   // cos(a t)
    static SignalExpr exp_of(double a);   // exp(a t)
    static SignalExpr power(double p);    // (1 + t)^p

    static SignalExpr unary(Op op, SignalExpr arg);
    static SignalExpr binary(Op op, SignalExpr lhs, SignalExpr rhs);

    /// Throws SignalError on malformed input, with the character offset.
    static SignalExpr parse(std::string_view text);

    /// Throws SignalError when a denominator is below 1e-300 in magnitude.
    double operator()(double t) const;

    /// Canonical infix text; parse(to_string()) evaluates identically.
    std::string to_string() const;

    Op op() const noexcept;

    friend SignalExpr operator+(SignalExpr a, SignalExpr b);
    friend SignalExpr operator-(SignalExpr a, SignalExpr b);
    friend SignalExpr operator*(SignalExpr a, SignalExpr b);
    friend SignalExpr operator/(SignalExpr a, SignalExpr b);
    friend SignalExpr operator-(SignalExpr a);

    struct Node;  // defined in signal_expr.cpp

private:
    explicit SignalExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

}  // namespace mge
