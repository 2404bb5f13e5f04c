#include "shiftfp/expression.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shiftfp/error.hpp"

namespace shiftfp {

struct Expression::Node {
    Op op = Op::Number;
    double value = 0.0;
    std::vector<Expression> args;
};

namespace {

bool is_unary(Expression::Op op) {
    using Op = Expression::Op;
    return op == Op::Negate || op == Op::Ln || op == Op::Abs;
}

bool is_binary(Expression::Op op) {
    using Op = Expression::Op;
    return op == Op::Add || op == Op::Subtract || op == Op::Multiply || op == Op::Divide;
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf.data(), end);
}

Expression::Expression() : Expression(number(0.0)) {}

Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::number(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("Expression::number: literal must be finite");
    }
    auto node = std::make_shared<Node>();
    node->op = Op::Number;
    node->value = value;
    return Expression(std::move(node));
}

Expression Expression::variable() {
    auto node = std::make_shared<Node>();
    node->op = Op::Variable;
    return Expression(std::move(node));
}

Expression Expression::negate(Expression operand) {
    return Expression(std::make_shared<Node>(Node{Op::Negate, 0.0, {std::move(operand)}}));
}

Expression Expression::ln(Expression operand) {
    return Expression(std::make_shared<Node>(Node{Op::Ln, 0.0, {std::move(operand)}}));
}

Expression Expression::abs(Expression operand) {
    return Expression(std::make_shared<Node>(Node{Op::Abs, 0.0, {std::move(operand)}}));
}

Expression Expression::binary(Op op, Expression lhs, Expression rhs) {
    if (!is_binary(op)) {
        throw std::invalid_argument("Expression::binary: not a binary operator");
    }
    return Expression(std::make_shared<Node>(Node{op, 0.0, {std::move(lhs), std::move(rhs)}}));
}

Expression::Op Expression::op() const noexcept { return node_->op; }

double Expression::value() const noexcept { return node_->value; }

const Expression& Expression::operand() const {
    if (!is_unary(op())) {
        throw std::logic_error("Expression::operand: not a unary node");
    }
    return node_->args[0];
}

const Expression& Expression::lhs() const {
    if (!is_binary(op())) {
        throw std::logic_error("Expression::lhs: not a binary node");
    }
    return node_->args[0];
}

const Expression& Expression::rhs() const {
    if (!is_binary(op())) {
        throw std::logic_error("Expression::rhs: not a binary node");
    }
    return node_->args[1];
}

namespace {

double eval_node(const Expression& e, double t) {
    using Op = Expression::Op;
    switch (e.op()) {
        case Op::Number:
            return e.value();
        case Op::Variable:
            return t;
        case Op::Negate:
            return -eval_node(e.operand(), t);
        case Op::Abs:
            return std::fabs(eval_node(e.operand(), t));
        case Op::Ln: {
            const double arg = eval_node(e.operand(), t);
            if (!(arg > 0.0)) {
                throw DomainError("ln of nonpositive value " + format_double(arg) + " at t=" +
                                  format_double(t));
            }
            return std::log(arg);
        }
        case Op::Add:
            return eval_node(e.lhs(), t) + eval_node(e.rhs(), t);
        case Op::Subtract:
            return eval_node(e.lhs(), t) - eval_node(e.rhs(), t);
        case Op::Multiply:
            return eval_node(e.lhs(), t) * eval_node(e.rhs(), t);
        case Op::Divide: {
            const double num = eval_node(e.lhs(), t);
            const double den = eval_node(e.rhs(), t);
            if (den == 0.0) {
                throw DomainError("division by zero at t=" + format_double(t));
            }
            return num / den;
        }
    }
    throw std::logic_error("eval_node: unknown op");
}

bool mentions_variable(const Expression& e) {
    using Op = Expression::Op;
    switch (e.op()) {
        case Op::Number: return false;
        case Op::Variable: return true;
        case Op::Negate:
        case Op::Ln:
        case Op::Abs: return mentions_variable(e.operand());
        default: return mentions_variable(e.lhs()) || mentions_variable(e.rhs());
    }
}

const char* infix_symbol(Expression::Op op) {
    using Op = Expression::Op;
    switch (op) {
        case Op::Add: return " + ";
        case Op::Subtract: return " - ";
        case Op::Multiply: return " * ";
        case Op::Divide: return " / ";
        default: return "";
    }
}

const char* prefix_name(Expression::Op op) {
    using Op = Expression::Op;
    switch (op) {
        case Op::Negate: return "neg";
        case Op::Ln: return "ln";
        case Op::Abs: return "abs";
        case Op::Add: return "add";
        case Op::Subtract: return "sub";
        case Op::Multiply: return "mul";
        case Op::Divide: return "div";
        default: return "";
    }
}

void print_infix(const Expression& e, std::string& out) {
    using Op = Expression::Op;
    switch (e.op()) {
        case Op::Number:
            // Negative literals only arise from programmatic construction.
            if (std::signbit(e.value())) {
                out += "(-" + format_double(-e.value()) + ")";
            } else {
                out += format_double(e.value());
            }
            return;
        case Op::Variable:
            out += 't';
            return;
        case Op::Negate:
            out += "(-";
            print_infix(e.operand(), out);
            out += ')';
            return;
        case Op::Ln:
        case Op::Abs:
            out += prefix_name(e.op());
            out += '(';
            print_infix(e.operand(), out);
            out += ')';
            return;
        default:
            out += '(';
            print_infix(e.lhs(), out);
            out += infix_symbol(e.op());
            print_infix(e.rhs(), out);
            out += ')';
            return;
    }
}

void print_prefix(const Expression& e, std::string& out) {
    using Op = Expression::Op;
    switch (e.op()) {
        case Op::Number:
            out += format_double(e.value());
            return;
        case Op::Variable:
            out += 't';
            return;
        case Op::Negate:
        case Op::Ln:
        case Op::Abs:
            out += prefix_name(e.op());
            out += '(';
            print_prefix(e.operand(), out);
            out += ')';
            return;
        default:
            out += prefix_name(e.op());
            out += '(';
            print_prefix(e.lhs(), out);
            out += ',';
            print_prefix(e.rhs(), out);
            out += ')';
            return;
    }
}

bool same_tree(const Expression& a, const Expression& b) {
    using Op = Expression::Op;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
        case Op::Number:
            return a.value() == b.value() && std::signbit(a.value()) == std::signbit(b.value());
        case Op::Variable:
            return true;
        case Op::Negate:
        case Op::Ln:
        case Op::Abs:
            return same_tree(a.operand(), b.operand());
        default:
            return same_tree(a.lhs(), b.lhs()) && same_tree(a.rhs(), b.rhs());
    }
}

}  // namespace

double Expression::eval(double t) const {
    const double v = eval_node(*this, t);
    if (!std::isfinite(v)) {
        throw DomainError("non-finite value at t=" + format_double(t));
    }
    return v;
}

bool Expression::is_constant() const { return !mentions_variable(*this); }

std::string Expression::to_string() const {
    std::string out;
    print_infix(*this, out);
    return out;
}

std::string Expression::tree() const {
    std::string out;
    print_prefix(*this, out);
    return out;
}

bool operator==(const Expression& a, const Expression& b) {
    return a.node_ == b.node_ || same_tree(a, b);
}

Expression operator+(Expression lhs, Expression rhs) {
    return Expression::binary(Expression::Op::Add, std::move(lhs), std::move(rhs));
}
Expression operator-(Expression lhs, Expression rhs) {
    return Expression::binary(Expression::Op::Subtract, std::move(lhs), std::move(rhs));
}
Expression operator*(Expression lhs, Expression rhs) {
    return Expression::binary(Expression::Op::Multiply, std::move(lhs), std::move(rhs));
}
Expression operator/(Expression lhs, Expression rhs) {
    return Expression::binary(Expression::Op::Divide, std::move(lhs), std::move(rhs));
}
Expression operator-(Expression operand) { return Expression::negate(std::move(operand)); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expression parse() {
        Expression e = parse_sum();
        skip_space();
        if (pos_ != src_.size()) {
            fail("unexpected '" + std::string(1, src_[pos_]) + "'", {"+", "-", "*", "/", "end of input"});
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
        std::string msg = "syntax error at offset " + std::to_string(pos_) + ": " + what + "; expected one of:";
        for (const auto& tok : expected) msg += " " + tok;
        throw ParseError(msg, pos_, std::move(expected));
    }

    void skip_space() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                      src_[pos_] == '\r')) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expression parse_sum() {
        Expression lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = std::move(lhs) + parse_product();
            } else if (accept('-')) {
                lhs = std::move(lhs) - parse_product();
            } else {
                return lhs;
            }
        }
    }

    Expression parse_product() {
        Expression lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = std::move(lhs) * parse_unary();
            } else if (accept('/')) {
                lhs = std::move(lhs) / parse_unary();
            } else {
                return lhs;
            }
        }
    }

    Expression parse_unary() {
        if (accept('-')) {
            return Expression::negate(parse_unary());
        }
        return parse_primary();
    }

    Expression parse_primary() {
        skip_space();
        static const std::vector<std::string> kPrimary = {"number", "t", "ln", "abs", "(", "-"};
        if (pos_ >= src_.size()) {
            fail("unexpected end of input", kPrimary);
        }
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expression inner = parse_sum();
            if (!accept(')')) {
                fail("unbalanced parenthesis", {")", "+", "-", "*", "/"});
            }
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            return parse_number();
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && ((src_[pos_] >= 'a' && src_[pos_] <= 'z') ||
                                          (src_[pos_] >= 'A' && src_[pos_] <= 'Z') ||
                                          (src_[pos_] >= '0' && src_[pos_] <= '9') || src_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view ident = src_.substr(start, pos_ - start);
            if (ident == "t") {
                return Expression::variable();
            }
            if (ident == "ln" || ident == "abs") {
                if (!accept('(')) {
                    fail("expected '(' after " + std::string(ident), {"("});
                }
                Expression arg = parse_sum();
                if (!accept(')')) {
                    fail("unbalanced parenthesis", {")", "+", "-", "*", "/"});
                }
                return ident == "ln" ? Expression::ln(std::move(arg)) : Expression::abs(std::move(arg));
            }
            pos_ = start;
            throw ParseError("unknown identifier '" + std::string(ident) + "' at offset " +
                                 std::to_string(start),
                             start, {"t", "ln", "abs"});
        }
        fail("unexpected '" + std::string(1, c) + "'", kPrimary);
    }

    Expression parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) {
            pos_ = start;
            fail("malformed number", {"digit"});
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                fail("malformed exponent", {"digit"});
            }
        }
        double value = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
            pos_ = start;
            fail("number out of range", {"finite number"});
        }
        return Expression::number(value);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expr(std::string_view source) { return Parser(source).parse(); }

double parse_constant(std::string_view source) {
    Expression e = parse_expr(source);
    if (!e.is_constant()) {
        throw ParseError("expected a constant, found an expression in t", 0, {"constant"});
    }
    return e.eval(0.0);
}

}  // namespace shiftfp
