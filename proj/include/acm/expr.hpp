#pragma once

// Arithmetic expressions over named chart coordinates.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
//
// `-x^2` therefore parses as -(x^2) and `2^3^2` as 2^(3^2).

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "acm/error.hpp"

namespace acm::expr {

enum class TokenKind { Number, Identifier, Operator, LeftParen, RightParen, Comma };

struct Token {
    TokenKind kind;
    std::string lexeme;
    std::size_t position;  // byte offset into the source

    bool operator==(const Token&) const = default;
};

/// Splits `source` into tokens. `#` starts a comment running to end of line.
/// Throws LexError on an illegal character or a malformed number.
std::vector<Token> tokenize(std::string_view source);

enum class Function { Sin, Cos, Tan, Exp, Ln, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

std::string_view function_name(Function f);
std::optional<Function> function_from_name(std::string_view name);
char op_symbol(BinaryOp op);

struct Node;

struct Constant {
    double value;
};
struct Variable {
    std::size_t index;
};
struct Negate {
    std::shared_ptr<const Node> operand;
};
struct Binary {
    BinaryOp op;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};
struct Call {
    Function function;
    std::shared_ptr<const Node> argument;
};

struct Node {
    std::variant<Constant, Variable, Negate, Binary, Call> data;
};

/// Immutable handle to an expression tree. Copies share structure.
class Expr {
public:
    Expr();  // constant 0
    explicit Expr(std::shared_ptr<const Node> node);

    static Expr constant(double value);
    static Expr variable(std::size_t index);
    static Expr negate(Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr call(Function f, Expr argument);

    const Node& node() const { return *node_; }
    const std::shared_ptr<const Node>& ptr() const { return node_; }

    /// True for a constant node holding exactly `value`.
    bool is_constant(double value) const;
    /// Largest coordinate index referenced plus one (0 for closed expressions).
    std::size_t arity() const;
    std::size_t depth() const;

    /// Fully parenthesized text that parses back to an identical tree.
    std::string to_string(std::span<const std::string> coordinates) const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const Node> node_;
};

// Builders used when composing fields from other fields. These fold the
// trivial cases (0 + e, 1 * e, 0 * e) so composed components stay small.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Parses `tokens` against the ordered coordinate names.
/// Throws ParseError with the byte position of the offending token.
Expr parse(std::span<const Token> tokens, std::span<const std::string> coordinates);

/// tokenize + parse.
Expr parse(std::string_view source, std::span<const std::string> coordinates);

double eval(const Expr& e, std::span<const double> point);

/// Value together with the gradient with respect to every coordinate.
struct DualValue {
    double value = 0.0;
    std::vector<double> partials;

    static DualValue constant(double v, std::size_t dimension);
    static DualValue coordinate(double v, std::size_t index, std::size_t dimension);
};

/// Forward-mode evaluation; partials are exact first derivatives.
DualValue eval_dual(const Expr& e, std::span<const double> point);

}  // namespace acm::expr
