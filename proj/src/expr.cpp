#include "cheeger/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "cheeger/errors.hpp"

namespace cheeger {

struct Expression::Node {
    enum class Kind { x_power, number, sgnpow, abspow, ramp, center, product, shift } kind;
    double a = 0.0;
    double b = 0.0;
    std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, double a = 0.0, double b = 0.0, std::vector<NodePtr> children = {})
{
    auto n = std::make_shared<Expression::Node>();
    n->kind = kind;
    n->a = a;
    n->b = b;
    n->children = std::move(children);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse_all()
    {
        auto n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ExpressionError(what, pos_ + 1); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool accept_word(const std::string& w)
    {
        skip();
        if (s_.compare(pos_, w.size(), w) != 0) return false;
        const std::size_t end = pos_ + w.size();
        if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
        pos_ = end;
        return true;
    }

    bool at_number()
    {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+';
    }

    double number()
    {
        skip();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(end - begin);
        if (!std::isfinite(v)) fail("number out of range");
        return v;
    }

    double exponent()
    {
        if (accept('(')) {
            double v = number();
            if (accept('/')) {
                const double d = number();
                if (d == 0.0) fail("division by zero in exponent");
                v /= d;
            }
            expect(')');
            return v;
        }
        return number();
    }

    NodePtr expr()
    {
        auto n = product();
        for (;;) {
            if (accept('+')) n = make(Kind::shift, number(), 0.0, {n});
            else if (accept('-')) n = make(Kind::shift, -number(), 0.0, {n});
            else return n;
        }
    }

    NodePtr product()
    {
        auto n = atom();
        while (accept('*')) n = make(Kind::product, 0.0, 0.0, {n, atom()});
        return n;
    }

    NodePtr atom()
    {
        skip();
        if (accept('(')) {
            auto n = expr();
            expect(')');
            return n;
        }
        if (accept_word("sgnpow")) return unary(Kind::sgnpow, "sgnpow");
        if (accept_word("abspow")) return unary(Kind::abspow, "abspow");
        if (accept_word("ramp")) {
            expect('(');
            const double c = number();
            expect(',');
            const double d = number();
            expect(')');
            if (!(d > 0.0)) fail("ramp width must be positive");
            return make(Kind::ramp, c, d);
        }
        if (accept_word("center")) {
            expect('(');
            auto inner = expr();
            expect(')');
            return make(Kind::center, 0.0, 0.0, {inner});
        }
        if (accept_word("x")) {
            double k = 1.0;
            if (accept('^')) k = exponent();
            return make(Kind::x_power, k);
        }
        if (at_number()) return make(Kind::number, number());
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        fail("unknown token '" + std::string(1, s_[pos_]) + "'");
    }

    NodePtr unary(Kind kind, const char* name)
    {
        expect('(');
        const double p = number();
        expect(')');
        if (!(p >= 1.0)) fail(std::string(name) + " requires p >= 1");
        return make(kind, p);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

bool depends_on_measure(const Expression::Node& n)
{
    if (n.kind == Kind::center) return true;
    for (const auto& c : n.children)
        if (depends_on_measure(*c)) return true;
    return false;
}

DifferentiableFunction build(const Expression::Node& n, const Measure* m)
{
    switch (n.kind) {
    case Kind::x_power:
        if (n.a == 0.0) return constant(1.0);
        if (n.a == std::floor(n.a) && n.a >= 1.0 && n.a <= 64.0) return monomial(static_cast<int>(n.a));
        return power(n.a);
    case Kind::number: return constant(n.a);
    case Kind::sgnpow: return signed_power(n.a);
    case Kind::abspow: return abs_power(n.a);
    case Kind::ramp: return ramp({n.a, n.b});
    case Kind::center:
        if (!m) throw DomainError("center(...) needs a measure");
        return centered(build(*n.children[0], m), *m);
    case Kind::product: return product(build(*n.children[0], m), build(*n.children[1], m));
    case Kind::shift: return build(*n.children[0], m).plus(n.a);
    }
    throw DomainError("corrupt expression tree");
}

std::string trimmed(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Expression Expression::parse(const std::string& text)
{
    Parser p(text);
    return Expression(trimmed(text), p.parse_all());
}

bool Expression::measure_dependent() const { return depends_on_measure(*root_); }

DifferentiableFunction Expression::instantiate(const Measure& m) const { return build(*root_, &m).relabeled(text_); }

DifferentiableFunction parse_function(const std::string& text, const Measure& m)
{
    return Expression::parse(text).instantiate(m);
}

} // namespace cheeger
