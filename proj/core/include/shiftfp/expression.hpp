#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace shiftfp {

/// Immutable arithmetic expression in one variable `t`.
///
/// The operator set is deliberately small: nonnegative literals, `t`,
/// + - * /, unary minus, ln(.) and abs(.). Nodes are shared, so copies are
/// cheap and an Expression may be used from several threads at once.
class Expression {
public:
    enum class Op { Number, Variable, Negate, Add, Subtract, Multiply, Divide, Ln, Abs };

    /// The literal 0.
    Expression();

    static Expression number(double value);
    static Expression variable();
    static Expression negate(Expression operand);
    static Expression ln(Expression operand);
    static Expression abs(Expression operand);
    static Expression binary(Op op, Expression lhs, Expression rhs);

    Op op() const noexcept;
    /// Literal value; only meaningful for Op::Number.
    double value() const noexcept;
    const Expression& operand() const;
    const Expression& lhs() const;
    const Expression& rhs() const;

    /// Evaluates at `t`. Throws DomainError on ln of a nonpositive value,
    /// division by zero, or a non-finite result.
    double eval(double t) const;

    /// True when the expression does not mention `t`.
    bool is_constant() const;

    /// Fully parenthesized infix text that parse_expr reads back to an
    /// expression with bitwise-identical evaluation.
    std::string to_string() const;

    /// Prefix form, e.g. `ln(div(add(1,mul(2,t)),2))`.
    std::string tree() const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    struct Node;
    explicit Expression(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

Expression operator+(Expression lhs, Expression rhs);
Expression operator-(Expression lhs, Expression rhs);
Expression operator*(Expression lhs, Expression rhs);
Expression operator/(Expression lhs, Expression rhs);
Expression operator-(Expression operand);

/// Parses infix text with the usual precedence (unary minus binds tighter
/// than * and /, which bind tighter than + and -), left associativity, and
/// call syntax for ln(e) and abs(e). Throws ParseError with the byte offset
/// and the set of tokens that would have been accepted there.
Expression parse_expr(std::string_view source);

/// Parses a constant expression such as "3/125" and evaluates it.
double parse_constant(std::string_view source);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace shiftfp
