#pragma once

#include <memory>
#include <string>

#include "cheeger/funcs.hpp"
#include "cheeger/measure.hpp"

namespace cheeger {

/// Parsed test-function expression. Grammar:
///
///   expr    := product (('+' | '-') number)*
///   product := atom ('*' atom)*
///   atom    := 'x' ['^' exponent] | number | 'sgnpow(' number ')' | 'abspow(' number ')'
///            | 'ramp(' number ',' number ')' | 'center(' expr ')' | '(' expr ')'
///   exponent:= number | '(' number ['/' number] ')'
///
/// `x^k` with integer k >= 1 is a monomial; other real exponents give x^a on x > 0.
/// `center(e)` subtracts the mean of e and therefore needs a measure; see instantiate().
class Expression {
public:
    struct Node;

    static Expression parse(const std::string& text);

    const std::string& text() const { return text_; }
    /// True when the expression contains center(...).
    bool measure_dependent() const;
    DifferentiableFunction instantiate(const Measure& m) const;

private:
    Expression(std::string text, std::shared_ptr<const Node> root) : text_(std::move(text)), root_(std::move(root)) {}

    std::string text_;
    std::shared_ptr<const Node> root_;
};

/// Shorthand for Expression::parse(text).instantiate(m).
DifferentiableFunction parse_function(const std::string& text, const Measure& m);

} // namespace cheeger
