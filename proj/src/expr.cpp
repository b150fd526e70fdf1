#include "fracbvp/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace fracbvp::expr {

ParseError::ParseError(std::size_t off, const std::string& message, std::string exp)
    : std::runtime_error(message + " at offset " + std::to_string(off) +
                         (exp.empty() ? "" : " (expected " + exp + ")")),
      offset(off),
      expected(std::move(exp)) {}

EvalError::EvalError(std::size_t off, const std::string& message)
    : std::runtime_error(message + " at offset " + std::to_string(off)), offset(off) {}

namespace {

const char* kFunctions[] = {"sqrt", "exp", "ln", "abs"};

bool is_function(const std::string& name) {
    for (const char* f : kFunctions)
        if (name == f) return true;
    return false;
}

struct Parser {
    const std::string& src;
    const std::string& var;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& message, const std::string& expected) {
        throw ParseError(pos, message, expected);
    }

    Ast make(NodeKind kind, std::size_t off) {
        auto n = std::make_unique<Node>();
        n->kind = kind;
        n->offset = off;
        return n;
    }

    Ast parse_expr() {
        Ast lhs = parse_term();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            const std::size_t off = pos++;
            Ast node = make(NodeKind::Binary, off);
            node->op = c;
            node->lhs = std::move(lhs);
            node->rhs = parse_term();
            lhs = std::move(node);
        }
    }

    Ast parse_term() {
        Ast lhs = parse_unary();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            const std::size_t off = pos++;
            Ast node = make(NodeKind::Binary, off);
            node->op = c;
            node->lhs = std::move(lhs);
            node->rhs = parse_unary();
            lhs = std::move(node);
        }
    }

    Ast parse_unary() {
        if (peek() == '-') {
            const std::size_t off = pos++;
            Ast node = make(NodeKind::Unary, off);
            node->op = '-';
            node->lhs = parse_unary();
            return node;
        }
        return parse_power();
    }

    Ast parse_power() {
        Ast base = parse_primary();
        if (peek() != '^') return base;
        const std::size_t off = pos++;
        Ast node = make(NodeKind::Binary, off);
        node->op = '^';
        node->lhs = std::move(base);
        node->rhs = parse_unary();  // right-associative, sign allowed
        return node;
    }

    Ast parse_primary() {
        const char c = peek();
        if (c == '(') {
            ++pos;
            Ast inner = parse_expr();
            if (peek() != ')') fail("unbalanced parenthesis", "')'");
            ++pos;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        if (c == '\0') fail("unexpected end of input", "number, variable or '('");
        fail(std::string("unexpected character '") + c + "'", "number, variable or '('");
    }

    Ast parse_number() {
        const std::size_t off = pos;
        const char* begin = src.c_str() + pos;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) fail("malformed number", "number");
        pos += static_cast<std::size_t>(end - begin);
        Ast node = make(NodeKind::Number, off);
        node->number = value;
        return node;
    }

    Ast parse_identifier() {
        const std::size_t off = pos;
        std::string name;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            name += src[pos++];
        if (name == var) {
            Ast node = make(NodeKind::Variable, off);
            node->name = name;
            return node;
        }
        if (is_function(name)) {
            if (peek() != '(') fail("function call needs parentheses", "'('");
            ++pos;
            Ast arg = parse_expr();
            if (peek() != ')') fail("unbalanced parenthesis", "')'");
            ++pos;
            Ast node = make(NodeKind::Call, off);
            node->name = name;
            node->lhs = std::move(arg);
            return node;
        }
        pos = off;
        fail("unknown identifier '" + name + "'",
             "'" + var + "' or one of sqrt, exp, ln, abs");
    }
};

int precedence(const Node& n) {
    switch (n.kind) {
        case NodeKind::Binary:
            if (n.op == '^') return 4;
            if (n.op == '*' || n.op == '/') return 2;
            return 1;
        case NodeKind::Unary:
            return 3;
        default:
            return 5;
    }
}

std::string wrap(const Node& n, bool parens) {
    return parens ? "(" + to_string(n) + ")" : to_string(n);
}

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

}  // namespace

Ast parse(const std::string& text, const std::string& variable) {
    if (text.empty()) throw ParseError(0, "empty expression", "expression");
    Parser p{text, variable};
    Ast ast = p.parse_expr();
    if (p.peek() != '\0') p.fail("trailing input", "end of expression");
    return ast;
}

double eval(const Node& node, double value) {
    switch (node.kind) {
        case NodeKind::Number:
            return node.number;
        case NodeKind::Variable:
            return value;
        case NodeKind::Unary:
            return -eval(*node.lhs, value);
        case NodeKind::Call: {
            const double x = eval(*node.lhs, value);
            if (node.name == "sqrt") {
                if (x < 0.0) throw EvalError(node.offset, "sqrt of a negative value");
                return std::sqrt(x);
            }
            if (node.name == "exp") return std::exp(x);
            if (node.name == "ln") {
                if (x <= 0.0) throw EvalError(node.offset, "ln of a nonpositive value");
                return std::log(x);
            }
            return std::abs(x);
        }
        case NodeKind::Binary: {
            const double a = eval(*node.lhs, value);
            const double b = eval(*node.rhs, value);
            switch (node.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == 0.0) throw EvalError(node.offset, "division by zero");
                    return a / b;
                default:
                    if (a < 0.0 && !is_integer(b))
                        throw EvalError(node.offset,
                                        "fractional power of a negative base");
                    if (a == 0.0 && b < 0.0)
                        throw EvalError(node.offset, "negative power of zero");
                    return std::pow(a, b);
            }
        }
    }
    throw EvalError(node.offset, "corrupt expression node");
}

std::string to_string(const Node& node) {
    switch (node.kind) {
        case NodeKind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", node.number);
            return buf;
        }
        case NodeKind::Variable:
            return node.name;
        case NodeKind::Call:
            return node.name + "(" + to_string(*node.lhs) + ")";
        case NodeKind::Unary:
            return "-" + wrap(*node.lhs, precedence(*node.lhs) < 3);
        case NodeKind::Binary: {
            const int p = precedence(node);
            if (node.op == '^')
                return wrap(*node.lhs, precedence(*node.lhs) <= 4) + "^" +
                       wrap(*node.rhs, precedence(*node.rhs) < 4);
            return wrap(*node.lhs, precedence(*node.lhs) < p) + node.op +
                   wrap(*node.rhs, precedence(*node.rhs) <= p);
        }
    }
    return "";
}

bool equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number: return a.number == b.number;
        case NodeKind::Variable: return a.name == b.name;
        case NodeKind::Unary: return a.op == b.op && equal(*a.lhs, *b.lhs);
        case NodeKind::Call: return a.name == b.name && equal(*a.lhs, *b.lhs);
        case NodeKind::Binary:
            return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
    return false;
}

std::function<double(double)> compile(const std::string& text,
                                      const std::string& variable) {
    std::shared_ptr<Node> ast{parse(text, variable).release()};
    return [ast](double x) { return eval(*ast, x); };
}

}  // namespace fracbvp::expr
