#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace fracbvp::expr {

enum class NodeKind { Number, Variable, Binary, Unary, Call };

struct Node {
    NodeKind kind = NodeKind::Number;
    double number = 0.0;               // Number
    char op = 0;                       // Binary: + - * / ^, Unary: -
    std::string name;                  // Call: sqrt exp ln abs
    std::unique_ptr<Node> lhs, rhs;    // Binary both, Unary/Call lhs only
    std::size_t offset = 0;            // byte offset into the source text
};

using Ast = std::unique_ptr<Node>;

struct ParseError : std::runtime_error {
    std::size_t offset;
    std::string expected;
    ParseError(std::size_t off, const std::string& message, std::string exp);
};

struct EvalError : std::runtime_error {
    std::size_t offset;
    EvalError(std::size_t off, const std::string& message);
};

// Grammar: expr := term (('+'|'-') term)*, term := unary (('*'|'/') unary)*,
// unary := '-' unary | power, power := primary ('^' unary)?,
// primary := number | variable | call '(' expr ')' | '(' expr ')'.
// Exactly one variable name is legal; anything else is an unknown identifier.
Ast parse(const std::string& text, const std::string& variable);

// Total on the declared domain; domain faults (sqrt of a negative, ln of a
// nonpositive, division by zero, fractional power of a negative) raise
// EvalError tagged with the node offset.
double eval(const Node& node, double value);

std::string to_string(const Node& node);
bool equal(const Node& a, const Node& b);

// parse + wrap into a reusable callable
std::function<double(double)> compile(const std::string& text,
                                      const std::string& variable);

}  // namespace fracbvp::expr
