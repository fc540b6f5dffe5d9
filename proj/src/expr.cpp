#include "acm/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace acm::expr {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::size_t scan_digits(std::string_view s, std::size_t i) {
    while (i < s.size() && is_digit(s[i])) ++i;
    return i;
}

// Returns the end offset of the number starting at `start`.
std::size_t scan_number(std::string_view s, std::size_t start) {
    std::size_t i = scan_digits(s, start);
    if (i < s.size() && s[i] == '.') {
        std::size_t frac = scan_digits(s, i + 1);
        if (frac == i + 1) throw LexError("malformed number", start);
        i = frac;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        std::size_t exp = scan_digits(s, j);
        if (exp == j) throw LexError("malformed number", start);
        i = exp;
    }
    if (i < s.size() && (s[i] == '.' || is_ident_start(s[i]))) throw LexError("malformed number", start);
    return i;
}

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < source.size()) {
        const char c = source[i];
        if (c == '#') {
            while (i < source.size() && source[i] != '\n') ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (is_digit(c)) {
            std::size_t end = scan_number(source, i);
            tokens.push_back({TokenKind::Number, std::string(source.substr(i, end - i)), i});
            i = end;
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t end = i;
            while (end < source.size() && is_ident_char(source[end])) ++end;
            tokens.push_back({TokenKind::Identifier, std::string(source.substr(i, end - i)), i});
            i = end;
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': case '-': case '*': case '/': case '^': kind = TokenKind::Operator; break;
            case '(': kind = TokenKind::LeftParen; break;
            case ')': kind = TokenKind::RightParen; break;
            case ',': kind = TokenKind::Comma; break;
            default: throw LexError(std::string("illegal character '") + c + "'", i);
        }
        tokens.push_back({kind, std::string(1, c), i});
        ++i;
    }
    return tokens;
}

std::string_view function_name(Function f) {
    switch (f) {
        case Function::Sin: return "sin";
        case Function::Cos: return "cos";
        case Function::Tan: return "tan";
        case Function::Exp: return "exp";
        case Function::Ln: return "ln";
        case Function::Sqrt: return "sqrt";
    }
    return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
    for (auto f : {Function::Sin, Function::Cos, Function::Tan, Function::Exp, Function::Ln, Function::Sqrt})
        if (function_name(f) == name) return f;
    return std::nullopt;
}

char op_symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return '+';
        case BinaryOp::Sub: return '-';
        case BinaryOp::Mul: return '*';
        case BinaryOp::Div: return '/';
        case BinaryOp::Pow: return '^';
    }
    return '?';
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr() : node_(std::make_shared<const Node>(Node{Constant{0.0}})) {}
Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) { return Expr(std::make_shared<const Node>(Node{Constant{value}})); }
Expr Expr::variable(std::size_t index) { return Expr(std::make_shared<const Node>(Node{Variable{index}})); }
Expr Expr::negate(Expr operand) { return Expr(std::make_shared<const Node>(Node{Negate{operand.node_}})); }
Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const Node>(Node{Binary{op, lhs.node_, rhs.node_}}));
}
Expr Expr::call(Function f, Expr argument) {
    return Expr(std::make_shared<const Node>(Node{Call{f, argument.node_}}));
}

bool Expr::is_constant(double value) const {
    const auto* c = std::get_if<Constant>(&node_->data);
    return c != nullptr && c->value == value;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t arity_of(const Node& n) {
    return std::visit(overloaded{
                          [](const Constant&) -> std::size_t { return 0; },
                          [](const Variable& v) -> std::size_t { return v.index + 1; },
                          [](const Negate& u) { return arity_of(*u.operand); },
                          [](const Binary& b) { return std::max(arity_of(*b.lhs), arity_of(*b.rhs)); },
                          [](const Call& c) { return arity_of(*c.argument); },
                      },
                      n.data);
}

std::size_t depth_of(const Node& n) {
    return std::visit(overloaded{
                          [](const Constant&) -> std::size_t { return 1; },
                          [](const Variable&) -> std::size_t { return 1; },
                          [](const Negate& u) { return 1 + depth_of(*u.operand); },
                          [](const Binary& b) { return 1 + std::max(depth_of(*b.lhs), depth_of(*b.rhs)); },
                          [](const Call& c) { return 1 + depth_of(*c.argument); },
                      },
                      n.data);
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print(const Node& n, std::span<const std::string> names, std::string& out) {
    std::visit(overloaded{
                   [&](const Constant& c) {
                       if (std::signbit(c.value)) {
                           out += "(-" + format_number(-c.value) + ")";
                       } else {
                           out += format_number(c.value);
                       }
                   },
                   [&](const Variable& v) {
                       out += v.index < names.size() ? names[v.index] : "x" + std::to_string(v.index);
                   },
                   [&](const Negate& u) {
                       // "(-2)" is reserved for the constant -2.
                       const bool wrap = std::holds_alternative<Constant>(u.operand->data);
                       out += wrap ? "(-(" : "(-";
                       print(*u.operand, names, out);
                       out += wrap ? "))" : ")";
                   },
                   [&](const Binary& b) {
                       out += '(';
                       print(*b.lhs, names, out);
                       out += op_symbol(b.op);
                       print(*b.rhs, names, out);
                       out += ')';
                   },
                   [&](const Call& c) {
                       out += function_name(c.function);
                       out += '(';
                       print(*c.argument, names, out);
                       out += ')';
                   },
               },
               n.data);
}

bool equal_nodes(const Node& a, const Node& b) {
    if (&a == &b) return true;
    if (a.data.index() != b.data.index()) return false;
    return std::visit(overloaded{
                          [&](const Constant& c) { return c.value == std::get<Constant>(b.data).value; },
                          [&](const Variable& v) { return v.index == std::get<Variable>(b.data).index; },
                          [&](const Negate& u) { return equal_nodes(*u.operand, *std::get<Negate>(b.data).operand); },
                          [&](const Binary& x) {
                              const auto& y = std::get<Binary>(b.data);
                              return x.op == y.op && equal_nodes(*x.lhs, *y.lhs) && equal_nodes(*x.rhs, *y.rhs);
                          },
                          [&](const Call& x) {
                              const auto& y = std::get<Call>(b.data);
                              return x.function == y.function && equal_nodes(*x.argument, *y.argument);
                          },
                      },
                      a.data);
}

}  // namespace

std::size_t Expr::arity() const { return arity_of(*node_); }
std::size_t Expr::depth() const { return depth_of(*node_); }

std::string Expr::to_string(std::span<const std::string> coordinates) const {
    std::string out;
    print(*node_, coordinates, out);
    return out;
}

bool operator==(const Expr& a, const Expr& b) { return equal_nodes(a.node(), b.node()); }

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant(0.0)) return b;
    if (b.is_constant(0.0)) return a;
    return Expr::binary(BinaryOp::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (b.is_constant(0.0)) return a;
    if (a.is_constant(0.0)) return -b;
    return Expr::binary(BinaryOp::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
    if (a.is_constant(1.0)) return b;
    if (b.is_constant(1.0)) return a;
    return Expr::binary(BinaryOp::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_constant(1.0)) return a;
    return Expr::binary(BinaryOp::Div, a, b);
}

Expr operator-(const Expr& a) {
    if (a.is_constant(0.0)) return a;
    return Expr::negate(a);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(std::span<const Token> tokens, std::span<const std::string> coordinates)
        : tokens_(tokens), coordinates_(coordinates) {}

    Expr parse_all() {
        if (tokens_.empty()) throw ParseError("expected operand", 0);
        Expr e = parse_expr();
        if (!at_end()) throw ParseError("unexpected '" + peek().lexeme + "'", peek().position);
        return e;
    }

private:
    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }

    std::size_t end_position() const {
        if (tokens_.empty()) return 0;
        const Token& last = tokens_.back();
        return last.position + last.lexeme.size();
    }
    std::size_t here() const { return at_end() ? end_position() : peek().position; }

    bool accept_operator(char op) {
        if (!at_end() && peek().kind == TokenKind::Operator && peek().lexeme[0] == op) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept_operator('+')) {
                lhs = Expr::binary(BinaryOp::Add, lhs, parse_term());
            } else if (accept_operator('-')) {
                lhs = Expr::binary(BinaryOp::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        for (;;) {
            if (accept_operator('*')) {
                lhs = Expr::binary(BinaryOp::Mul, lhs, parse_factor());
            } else if (accept_operator('/')) {
                lhs = Expr::binary(BinaryOp::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_factor() {
        if (accept_operator('-')) {
            // A bare literal after '-' is a negative constant; "-2^2" stays -(2^2).
            if (!at_end() && peek().kind == TokenKind::Number &&
                (pos_ + 1 >= tokens_.size() || tokens_[pos_ + 1].lexeme != "^")) {
                return Expr::constant(-std::strtod(tokens_[pos_++].lexeme.c_str(), nullptr));
            }
            return Expr::negate(parse_factor());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (accept_operator('^')) return Expr::binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    Expr parse_atom() {
        if (at_end()) throw ParseError("expected operand", end_position());
        const Token& tok = peek();
        switch (tok.kind) {
            case TokenKind::Number:
                ++pos_;
                return Expr::constant(std::strtod(tok.lexeme.c_str(), nullptr));
            case TokenKind::Identifier:
                return parse_identifier();
            case TokenKind::LeftParen: {
                ++pos_;
                Expr inner = parse_expr();
                expect_right_paren();
                return inner;
            }
            case TokenKind::RightParen:
                throw ParseError("unexpected ')'", tok.position);
            default:
                throw ParseError("expected operand, found '" + tok.lexeme + "'", tok.position);
        }
    }

    Expr parse_identifier() {
        const Token& tok = peek();
        ++pos_;
        const bool is_call = !at_end() && peek().kind == TokenKind::LeftParen;
        if (!is_call) {
            for (std::size_t i = 0; i < coordinates_.size(); ++i)
                if (coordinates_[i] == tok.lexeme) return Expr::variable(i);
        }
        if (auto f = function_from_name(tok.lexeme)) {
            if (!is_call) throw ParseError("expected '(' after function '" + tok.lexeme + "'", here());
            ++pos_;
            Expr arg = parse_expr();
            expect_right_paren();
            return Expr::call(*f, arg);
        }
        throw ParseError("unknown identifier '" + tok.lexeme + "'", tok.position);
    }

    void expect_right_paren() {
        if (at_end() || peek().kind != TokenKind::RightParen) throw ParseError("expected ')'", here());
        ++pos_;
    }

    std::span<const Token> tokens_;
    std::span<const std::string> coordinates_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::span<const Token> tokens, std::span<const std::string> coordinates) {
    return Parser(tokens, coordinates).parse_all();
}

Expr parse(std::string_view source, std::span<const std::string> coordinates) {
    auto tokens = tokenize(source);
    return parse(tokens, coordinates);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_error(const std::string& what, const Node& node) {
    std::string text;
    print(node, {}, text);
    throw EvalError(what, text);
}

double checked(double v, const Node& node) {
    if (!std::isfinite(v)) domain_error("non-finite result", node);
    return v;
}

double apply_function(Function f, double a, const Node& node) {
    switch (f) {
        case Function::Sin: return std::sin(a);
        case Function::Cos: return std::cos(a);
        case Function::Tan: return checked(std::tan(a), node);
        case Function::Exp: return checked(std::exp(a), node);
        case Function::Ln:
            if (!(a > 0.0)) domain_error("ln of non-positive value", node);
            return std::log(a);
        case Function::Sqrt:
            if (a < 0.0) domain_error("sqrt of negative value", node);
            return std::sqrt(a);
    }
    return 0.0;
}

double eval_node(const Node& n, std::span<const double> point) {
    return std::visit(overloaded{
                          [](const Constant& c) { return c.value; },
                          [&](const Variable& v) {
                              if (v.index >= point.size()) domain_error("coordinate out of range", n);
                              return point[v.index];
                          },
                          [&](const Negate& u) { return -eval_node(*u.operand, point); },
                          [&](const Binary& b) {
                              const double l = eval_node(*b.lhs, point);
                              const double r = eval_node(*b.rhs, point);
                              switch (b.op) {
                                  case BinaryOp::Add: return l + r;
                                  case BinaryOp::Sub: return l - r;
                                  case BinaryOp::Mul: return l * r;
                                  case BinaryOp::Div:
                                      if (r == 0.0) domain_error("division by zero", n);
                                      return l / r;
                                  case BinaryOp::Pow: return checked(std::pow(l, r), n);
                              }
                              return 0.0;
                          },
                          [&](const Call& c) { return apply_function(c.function, eval_node(*c.argument, point), n); },
                      },
                      n.data);
}

bool any_nonzero(const std::vector<double>& v) {
    for (double x : v)
        if (x != 0.0) return true;
    return false;
}

DualValue eval_dual_node(const Node& n, std::span<const double> point) {
    const std::size_t dim = point.size();
    return std::visit(
        overloaded{
            [&](const Constant& c) { return DualValue::constant(c.value, dim); },
            [&](const Variable& v) {
                if (v.index >= dim) domain_error("coordinate out of range", n);
                return DualValue::coordinate(point[v.index], v.index, dim);
            },
            [&](const Negate& u) {
                DualValue r = eval_dual_node(*u.operand, point);
                r.value = -r.value;
                for (double& d : r.partials) d = -d;
                return r;
            },
            [&](const Binary& b) {
                DualValue l = eval_dual_node(*b.lhs, point);
                const DualValue r = eval_dual_node(*b.rhs, point);
                switch (b.op) {
                    case BinaryOp::Add:
                        l.value += r.value;
                        for (std::size_t k = 0; k < dim; ++k) l.partials[k] += r.partials[k];
                        return l;
                    case BinaryOp::Sub:
                        l.value -= r.value;
                        for (std::size_t k = 0; k < dim; ++k) l.partials[k] -= r.partials[k];
                        return l;
                    case BinaryOp::Mul:
                        for (std::size_t k = 0; k < dim; ++k)
                            l.partials[k] = l.partials[k] * r.value + l.value * r.partials[k];
                        l.value *= r.value;
                        return l;
                    case BinaryOp::Div: {
                        if (r.value == 0.0) domain_error("division by zero", n);
                        const double q = l.value / r.value;
                        for (std::size_t k = 0; k < dim; ++k)
                            l.partials[k] = (l.partials[k] - q * r.partials[k]) / r.value;
                        l.value = q;
                        return l;
                    }
                    case BinaryOp::Pow: {
                        const double value = checked(std::pow(l.value, r.value), n);
                        DualValue out = DualValue::constant(value, dim);
                        if (any_nonzero(l.partials)) {
                            const double dbase = checked(r.value * std::pow(l.value, r.value - 1.0), n);
                            for (std::size_t k = 0; k < dim; ++k) out.partials[k] += dbase * l.partials[k];
                        }
                        if (any_nonzero(r.partials)) {
                            if (!(l.value > 0.0)) domain_error("variable exponent of non-positive base", n);
                            const double dexp = value * std::log(l.value);
                            for (std::size_t k = 0; k < dim; ++k) out.partials[k] += dexp * r.partials[k];
                        }
                        return out;
                    }
                }
                return l;
            },
            [&](const Call& c) {
                DualValue a = eval_dual_node(*c.argument, point);
                const double value = apply_function(c.function, a.value, n);
                double slope = 0.0;
                switch (c.function) {
                    case Function::Sin: slope = std::cos(a.value); break;
                    case Function::Cos: slope = -std::sin(a.value); break;
                    case Function::Tan: slope = 1.0 + value * value; break;
                    case Function::Exp: slope = value; break;
                    case Function::Ln: slope = 1.0 / a.value; break;
                    case Function::Sqrt:
                        if (value == 0.0 && any_nonzero(a.partials)) domain_error("derivative of sqrt at 0", n);
                        slope = value == 0.0 ? 0.0 : 0.5 / value;
                        break;
                }
                a.value = value;
                for (double& d : a.partials) d *= slope;
                return a;
            },
        },
        n.data);
}

}  // namespace

double eval(const Expr& e, std::span<const double> point) { return eval_node(e.node(), point); }

DualValue DualValue::constant(double v, std::size_t dimension) { return {v, std::vector<double>(dimension, 0.0)}; }

DualValue DualValue::coordinate(double v, std::size_t index, std::size_t dimension) {
    DualValue d = constant(v, dimension);
    d.partials[index] = 1.0;
    return d;
}

DualValue eval_dual(const Expr& e, std::span<const double> point) { return eval_dual_node(e.node(), point); }

}  // namespace acm::expr
