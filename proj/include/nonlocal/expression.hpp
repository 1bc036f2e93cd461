#pragma once

#include <functional>
#include <string>

namespace nonlocal {

/// Arithmetic expression in one variable x, used for custom initial data.
///
/// Grammar: + - * / ^ (right associative), unary minus, parentheses,
/// numbers, the constants pi and e, and the functions sin cos tan exp log
/// sqrt abs sinh cosh tanh. Parse errors throw std::invalid_argument with
/// the offending position.
class Expression {
public:
    static Expression parse(const std::string& source);

    double operator()(double x) const { return eval_(x); }
    const std::string& source() const { return source_; }

private:
    Expression(std::string source, std::function<double(double)> eval)
        : source_(std::move(source)), eval_(std::move(eval)) {}

    std::string source_;
    std::function<double(double)> eval_;
};

}  // namespace nonlocal
