#pragma once

#include <map>
#include <memory>
#include <string>

namespace amcomp {

/// Arithmetic expression over literals and named parameters with the usual
/// precedence (*, / over +, -), parentheses and unary minus. Evaluation is
/// deterministic; division by zero and unknown parameters are reported errors.
class Expression {
public:
    Expression() = default;

    /// Parses `text`; throws ExprSyntaxError with a 1-based column on failure.
    static Expression parse(const std::string& text);

    /// Convenience for numeric constants.
    static Expression literal(double value);

    double evaluate(const std::map<std::string, double>& parameters) const;

    const std::string& text() const { return text_; }
    bool is_empty() const { return node_ == nullptr; }

    struct Node;

private:
    std::shared_ptr<const Node> node_;
    std::string text_;
};

} // namespace amcomp
