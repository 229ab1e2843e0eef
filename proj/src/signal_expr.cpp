#include "mge/signal_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mge/errors.hpp"

namespace mge {

struct SignalExpr::Node {
    Op op = Op::Const;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

SignalExpr::SignalExpr() : node_(std::make_shared<Node>()) {}

SignalExpr SignalExpr::constant(double c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = c;
    return SignalExpr(std::move(n));
}

SignalExpr SignalExpr::time() {
    auto n = std::make_shared<Node>();
    n->op = Op::Time;
    return SignalExpr(std::move(n));
}

SignalExpr SignalExpr::unary(Op op, SignalExpr arg) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(arg.node_);
    return SignalExpr(std::move(n));
}

SignalExpr SignalExpr::binary(Op op, SignalExpr lhs, SignalExpr rhs) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return SignalExpr(std::move(n));
}

SignalExpr SignalExpr::sin_of(double a) { return unary(Op::Sin, constant(a) * time()); }
SignalExpr SignalExpr::cos_of(double a) { return unary(Op::Cos, constant(a) * time()); }
SignalExpr SignalExpr::exp_of(double a) { return unary(Op::Exp, constant(a) * time()); }
SignalExpr SignalExpr::power(double p) {
    return binary(Op::Pow, constant(1.0) + time(), constant(p));
}

SignalExpr operator+(SignalExpr a, SignalExpr b) {
    return SignalExpr::binary(SignalExpr::Op::Add, std::move(a), std::move(b));
}
SignalExpr operator-(SignalExpr a, SignalExpr b) {
    return SignalExpr::binary(SignalExpr::Op::Sub, std::move(a), std::move(b));
}
SignalExpr operator*(SignalExpr a, SignalExpr b) {
    return SignalExpr::binary(SignalExpr::Op::Mul, std::move(a), std::move(b));
}
SignalExpr operator/(SignalExpr a, SignalExpr b) {
    return SignalExpr::binary(SignalExpr::Op::Div, std::move(a), std::move(b));
}
SignalExpr operator-(SignalExpr a) { return SignalExpr::unary(SignalExpr::Op::Neg, std::move(a)); }

SignalExpr::Op SignalExpr::op() const noexcept { return node_->op; }

namespace {

double eval_node(const SignalExpr::Node& n, double t);

}  // namespace

double SignalExpr::operator()(double t) const { return eval_node(*node_, t); }

namespace {

double eval_node(const SignalExpr::Node& n, double t) {
    using Op = SignalExpr::Op;
    switch (n.op) {
        case Op::Const:
            return n.value;
        case Op::Time:
            return t;
        case Op::Neg:
            return -eval_node(*n.lhs, t);
        case Op::Add:
            return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
        case Op::Sub:
            return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
        case Op::Mul:
            return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
        case Op::Div: {
            const double den = eval_node(*n.rhs, t);
            if (std::abs(den) < 1e-300)
                throw SignalError("division by near-zero denominator at t=" + std::to_string(t));
            return eval_node(*n.lhs, t) / den;
        }
        case Op::Sin:
            return std::sin(eval_node(*n.lhs, t));
        case Op::Cos:
            return std::cos(eval_node(*n.lhs, t));
        case Op::Exp:
            return std::exp(eval_node(*n.lhs, t));
        case Op::Pow:
            return std::pow(eval_node(*n.lhs, t), eval_node(*n.rhs, t));
    }
    return 0.0;
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

int precedence(SignalExpr::Op op) {
    using Op = SignalExpr::Op;
    switch (op) {
        case Op::Add:
        case Op::Sub:
            return 1;
        case Op::Mul:
        case Op::Div:
            return 2;
        case Op::Neg:
            return 3;
        default:
            return 4;
    }
}

std::string render(const SignalExpr::Node& n) {
    using Op = SignalExpr::Op;
    auto wrap = [](const SignalExpr::Node& child, int min_prec) {
        std::string s = render(child);
        return precedence(child.op) < min_prec ? "(" + s + ")" : s;
    };
    switch (n.op) {
        case Op::Const:
            return n.value < 0 ? "(" + format_number(n.value) + ")" : format_number(n.value);
        case Op::Time:
            return "t";
        case Op::Neg:
            return "-" + wrap(*n.lhs, 4);
        case Op::Add:
            return wrap(*n.lhs, 1) + "+" + wrap(*n.rhs, 2);
        case Op::Sub:
            return wrap(*n.lhs, 1) + "-" + wrap(*n.rhs, 2);
        case Op::Mul:
            return wrap(*n.lhs, 2) + "*" + wrap(*n.rhs, 3);
        case Op::Div:
            return wrap(*n.lhs, 2) + "/" + wrap(*n.rhs, 3);
        case Op::Sin:
            return "sin(" + render(*n.lhs) + ")";
        case Op::Cos:
            return "cos(" + render(*n.lhs) + ")";
        case Op::Exp:
            return "exp(" + render(*n.lhs) + ")";
        case Op::Pow:
            return "pow(" + render(*n.lhs) + "," + render(*n.rhs) + ")";
    }
    return {};
}

// Recursive-descent parser:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | '+' unary | atom
//   atom   := number | 't' | func '(' expr [',' expr] ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    SignalExpr parse() {
        SignalExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw SignalError("expression parse error at offset " + std::to_string(pos_) + ": " + msg +
                          " in '" + std::string(text_) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    SignalExpr expr() {
        SignalExpr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = std::move(lhs) + term();
            else if (accept('-'))
                lhs = std::move(lhs) - term();
            else
                return lhs;
        }
    }

    SignalExpr term() {
        SignalExpr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = std::move(lhs) * unary();
            else if (accept('/'))
                lhs = std::move(lhs) / unary();
            else
                return lhs;
        }
    }

    SignalExpr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return atom();
    }

    SignalExpr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (accept('(')) {
            SignalExpr e = expr();
            expect(')');
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view id = text_.substr(start, pos_ - start);
            if (id == "t") return SignalExpr::time();
            using Op = SignalExpr::Op;
            Op op;
            if (id == "sin")
                op = Op::Sin;
            else if (id == "cos")
                op = Op::Cos;
            else if (id == "exp")
                op = Op::Exp;
            else if (id == "pow")
                op = Op::Pow;
            else {
                pos_ = start;
                fail("unknown identifier '" + std::string(id) + "'");
            }
            expect('(');
            SignalExpr arg = expr();
            if (op == Op::Pow) {
                expect(',');
                SignalExpr exponent = expr();
                expect(')');
                return SignalExpr::binary(op, std::move(arg), std::move(exponent));
            }
            expect(')');
            return SignalExpr::unary(op, std::move(arg));
        }
        fail("unexpected character");
    }

    SignalExpr number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double v = 0.0;
        auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(res.ptr - begin);
        return SignalExpr::constant(v);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

SignalExpr SignalExpr::parse(std::string_view text) { return Parser(text).parse(); }

std::string SignalExpr::to_string() const { return render(*node_); }

}  // namespace mge
