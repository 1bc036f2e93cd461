#include "nonlocal/expression.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace nonlocal {
namespace {

using Fn = std::function<double(double)>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Fn parse() {
        Fn f = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression '" + s_ + "': " + what + " at position " +
                                    std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Fn expr() {
        Fn lhs = term();
        for (;;) {
            if (accept('+')) {
                Fn rhs = term();
                lhs = [lhs, rhs](double x) { return lhs(x) + rhs(x); };
            } else if (accept('-')) {
                Fn rhs = term();
                lhs = [lhs, rhs](double x) { return lhs(x) - rhs(x); };
            } else {
                return lhs;
            }
        }
    }

    Fn term() {
        Fn lhs = unary();
        for (;;) {
            if (accept('*')) {
                Fn rhs = unary();
                lhs = [lhs, rhs](double x) { return lhs(x) * rhs(x); };
            } else if (accept('/')) {
                Fn rhs = unary();
                lhs = [lhs, rhs](double x) { return lhs(x) / rhs(x); };
            } else {
                return lhs;
            }
        }
    }

    Fn unary() {
        if (accept('-')) {
            Fn f = unary();
            return [f](double x) { return -f(x); };
        }
        if (accept('+')) return unary();
        return power();
    }

    Fn power() {
        Fn base = primary();
        if (accept('^')) {
            Fn exponent = unary();
            return [base, exponent](double x) { return std::pow(base(x), exponent(x)); };
        }
        return base;
    }

    Fn primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (accept('(')) {
            Fn f = expr();
            if (!accept(')')) fail("expected ')'");
            return f;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("malformed number");
            }
            pos_ += used;
            return [value](double) { return value; };
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "x") return [](double x) { return x; };
            if (name == "pi") return [](double) { return std::numbers::pi; };
            if (name == "e") return [](double) { return std::numbers::e; };
            static const std::map<std::string, double (*)(double)> functions = {
                {"sin", [](double v) { return std::sin(v); }},
                {"cos", [](double v) { return std::cos(v); }},
                {"tan", [](double v) { return std::tan(v); }},
                {"exp", [](double v) { return std::exp(v); }},
                {"log", [](double v) { return std::log(v); }},
                {"sqrt", [](double v) { return std::sqrt(v); }},
                {"abs", [](double v) { return std::abs(v); }},
                {"sinh", [](double v) { return std::sinh(v); }},
                {"cosh", [](double v) { return std::cosh(v); }},
                {"tanh", [](double v) { return std::tanh(v); }},
            };
            const auto it = functions.find(name);
            if (it == functions.end()) {
                pos_ = start;
                fail("unknown identifier '" + name + "'");
            }
            if (!accept('(')) fail("expected '(' after " + name);
            Fn arg = expr();
            if (!accept(')')) fail("expected ')'");
            const auto fn = it->second;
            return [fn, arg](double x) { return fn(arg(x)); };
        }
        fail("unexpected character");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& source) {
    Parser parser(source);
    Fn f = parser.parse();
    return Expression(source, std::move(f));
}

}  // namespace nonlocal
