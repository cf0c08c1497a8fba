#include "bessel4/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "bessel4/errors.hpp"

namespace bessel4 {

enum class Op { constant, variable, add, sub, mul, div, pow, neg, call };
enum class Fn { exp, log, sin, cos, sqrt, bump, cutoff, step };

struct Expression::Node {
    Op op = Op::constant;
    Fn fn = Fn::exp;
    long double value = 0.0L;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(Op op, std::vector<NodePtr> args = {}, long double value = 0.0L, Fn fn = Fn::exp)
{
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->args = std::move(args);
    n->value = value;
    n->fn = fn;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse()
    {
        NodePtr e = expression();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw DomainError("expression: " + what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
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

    NodePtr expression()
    {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make_node(Op::add, {lhs, term()});
            else if (accept('-'))
                lhs = make_node(Op::sub, {lhs, term()});
            else
                return lhs;
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make_node(Op::mul, {lhs, unary()});
            else if (accept('/'))
                lhs = make_node(Op::div, {lhs, unary()});
            else
                return lhs;
        }
    }

    // unary minus binds looser than ^, so -x^2 = -(x^2)
    NodePtr unary()
    {
        if (accept('-'))
            return make_node(Op::neg, {unary()});
        if (accept('+'))
            return unary();
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (accept('^'))
            return make_node(Op::pow, {base, unary()});
        return base;
    }

    NodePtr primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        if (accept('(')) {
            NodePtr e = expression();
            if (!accept(')'))
                fail("expected ')'");
            return e;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            long double v = 0.0L;
            try {
                v = std::stold(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("malformed number");
            }
            pos_ += used;
            return make_node(Op::constant, {}, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "x")
                return make_node(Op::variable);
            if (name == "pi")
                return make_node(Op::constant, {}, std::numbers::pi_v<long double>);
            static const std::pair<const char*, Fn> table[] = {{"exp", Fn::exp},   {"log", Fn::log},   {"sin", Fn::sin},
                                                               {"cos", Fn::cos},   {"sqrt", Fn::sqrt}, {"bump", Fn::bump},
                                                               {"cutoff", Fn::cutoff}, {"step", Fn::step}};
            for (const auto& [fname, fn] : table) {
                if (name == fname) {
                    if (!accept('('))
                        fail("expected '(' after " + name);
                    NodePtr arg = expression();
                    if (!accept(')'))
                        fail("expected ')'");
                    return make_node(Op::call, {arg}, 0.0L, fn);
                }
            }
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected character");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

Jet apply_fn(Fn fn, const Jet& u)
{
    switch (fn) {
    case Fn::exp:
        return exp(u);
    case Fn::log:
        return log(u);
    case Fn::sin:
        return sin(u);
    case Fn::cos:
        return cos(u);
    case Fn::sqrt:
        return sqrt(u);
    case Fn::bump:
        return bump(u);
    case Fn::cutoff:
        return smooth_cutoff(u);
    case Fn::step: {
        const long double v = u.value();
        return Jet(v < 0 ? 1.0L : (v > 0 ? 0.0L : 0.5L), u.order());
    }
    }
    throw InternalError("expression: unknown function");
}

Jet evaluate(const Expression::Node& n, const Jet& x)
{
    switch (n.op) {
    case Op::constant:
        return Jet(n.value, x.order());
    case Op::variable:
        return x;
    case Op::add:
        return evaluate(*n.args[0], x) + evaluate(*n.args[1], x);
    case Op::sub:
        return evaluate(*n.args[0], x) - evaluate(*n.args[1], x);
    case Op::mul:
        return evaluate(*n.args[0], x) * evaluate(*n.args[1], x);
    case Op::div:
        return evaluate(*n.args[0], x) / evaluate(*n.args[1], x);
    case Op::neg:
        return -evaluate(*n.args[0], x);
    case Op::pow: {
        const Jet base = evaluate(*n.args[0], x);
        if (n.args[1]->op == Op::constant)
            return pow(base, n.args[1]->value);
        return pow(base, evaluate(*n.args[1], x));
    }
    case Op::call:
        return apply_fn(n.fn, evaluate(*n.args[0], x));
    }
    throw InternalError("expression: unknown node");
}

double apply_fn(Fn fn, double u)
{
    switch (fn) {
    case Fn::exp:
        return std::exp(u);
    case Fn::log:
        return std::log(u);
    case Fn::sin:
        return std::sin(u);
    case Fn::cos:
        return std::cos(u);
    case Fn::sqrt:
        return std::sqrt(u);
    case Fn::bump: {
        const double gap = 1.0 - u * u;
        return gap > 1e-4 ? std::exp(1.0 - 1.0 / gap) : 0.0;
    }
    case Fn::cutoff: {
        if (u <= 0.0)
            return 1.0;
        if (u >= 1.0)
            return 0.0;
        const double a = std::exp(-1.0 / (1.0 - u)), b = std::exp(-1.0 / u);
        return a / (a + b);
    }
    case Fn::step:
        return u < 0 ? 1.0 : (u > 0 ? 0.0 : 0.5);
    }
    throw InternalError("expression: unknown function");
}

double evaluate(const Expression::Node& n, double x)
{
    switch (n.op) {
    case Op::constant:
        return static_cast<double>(n.value);
    case Op::variable:
        return x;
    case Op::add:
        return evaluate(*n.args[0], x) + evaluate(*n.args[1], x);
    case Op::sub:
        return evaluate(*n.args[0], x) - evaluate(*n.args[1], x);
    case Op::mul:
        return evaluate(*n.args[0], x) * evaluate(*n.args[1], x);
    case Op::div:
        return evaluate(*n.args[0], x) / evaluate(*n.args[1], x);
    case Op::neg:
        return -evaluate(*n.args[0], x);
    case Op::pow: {
        const double base = evaluate(*n.args[0], x);
        const double e = evaluate(*n.args[1], x);
        if (e == std::round(e) && std::fabs(e) <= 64.0) {
            double r = 1.0, b = e < 0 ? 1.0 / base : base;
            for (long k = std::lround(std::fabs(e)); k > 0; k >>= 1, b *= b)
                if (k & 1)
                    r *= b;
            return r;
        }
        return std::pow(base, e);
    }
    case Op::call:
        return apply_fn(n.fn, evaluate(*n.args[0], x));
    }
    throw InternalError("expression: unknown node");
}

// e^{-1/t} for t > 0, 0 otherwise
Jet flat_exp(const Jet& t)
{
    if (!(t.value() > 0.0L))
        return Jet(0.0L, t.order());
    return exp(-1.0L / t);
}

} // namespace

Jet bump(const Jet& u)
{
    const long double v = u.value();
    const long double gap = 1.0L - v * v;
    // all derivatives are below long double range once 1/gap exceeds ~11000
    if (!(gap > 1e-4L))
        return Jet(0.0L, u.order());
    return exp(1.0L - 1.0L / (1.0L - u * u));
}

Jet smooth_cutoff(const Jet& u)
{
    const Jet a = flat_exp(1.0L - u), b = flat_exp(u);
    if (b.value() == 0.0L && u.value() <= 0.0L)
        return Jet(1.0L, u.order());
    if (a.value() == 0.0L)
        return Jet(0.0L, u.order());
    return a / (a + b);
}

Expression::Expression(std::shared_ptr<const Node> root, std::string text) : root_(std::move(root)), text_(std::move(text)) {}

Expression Expression::parse(const std::string& text)
{
    Parser p(text);
    return Expression(p.parse(), text);
}

double Expression::operator()(double x) const { return evaluate(*root_, x); }

Jet Expression::operator()(const Jet& x) const { return evaluate(*root_, x); }

} // namespace bessel4
