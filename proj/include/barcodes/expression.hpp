#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "barcodes/errors.hpp"
#include "barcodes/rational.hpp"

namespace barcodes {

/// Small arithmetic expressions over named variables: + - * / ^, unary
/// minus, parentheses and exact rational literals. Supports symbolic partial
/// derivatives and double evaluation.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | name | '(' expr ')'
class Expression {
public:
    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow };

    /// Parses `text`; every identifier must be one of `variables`.
    static Expression parse(std::string_view text, const std::set<std::string>& variables)
    {
        Parser p{text, variables};
        auto node = p.expression();
        p.skip_space();
        if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
        return Expression(std::move(node));
    }

    static Expression constant(const Rational& q) { return Expression(make_const(q)); }
    static Expression variable(const std::string& name) { return Expression(make(Op::Var, {}, {}, 0, name)); }

    double evaluate(const std::map<std::string, double>& env) const { return eval(*node_, env); }

    /// d/d(name), simplified by constant folding.
    Expression derivative(const std::string& name) const { return Expression(diff(node_, name)); }

    std::string str() const { return print(*node_); }

    /// Value if the expression has no variables.
    std::optional<Rational> constant_value() const { return fold(*node_); }

private:
    struct Node;
    using Ptr = std::shared_ptr<const Node>;
    struct Node {
        Op op;
        Ptr lhs, rhs;
        Rational value;
        std::string name;
    };

    explicit Expression(Ptr node) : node_(std::move(node)) {}

    static Ptr make(Op op, Ptr lhs, Ptr rhs, const Rational& value = 0, std::string name = {})
    {
        return std::make_shared<const Node>(Node{op, std::move(lhs), std::move(rhs), value, std::move(name)});
    }
    static Ptr make_const(const Rational& q) { return make(Op::Const, nullptr, nullptr, q); }

    static std::optional<Rational> fold(const Node& n)
    {
        switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return std::nullopt;
        case Op::Neg: {
            auto a = fold(*n.lhs);
            return a ? std::optional<Rational>(-*a) : std::nullopt;
        }
        default: break;
        }
        auto a = fold(*n.lhs), b = fold(*n.rhs);
        if (!a || !b) return std::nullopt;
        switch (n.op) {
        case Op::Add: return Rational(*a + *b);
        case Op::Sub: return Rational(*a - *b);
        case Op::Mul: return Rational(*a * *b);
        case Op::Div:
            if (*b == 0) return std::nullopt;
            return Rational(*a / *b);
        case Op::Pow: {
            if (b->get_den() != 1 || !b->get_num().fits_slong_p()) return std::nullopt;
            long e = b->get_num().get_si();
            if (e < 0 && *a == 0) return std::nullopt;
            if (std::labs(e) > 64) return std::nullopt;
            Rational r = 1;
            for (long k = 0; k < std::labs(e); ++k) r *= *a;
            return e < 0 ? Rational(1 / r) : r;
        }
        default: return std::nullopt;
        }
    }

    static bool is_const(const Ptr& p, long v)
    {
        auto c = fold(*p);
        return c && *c == v;
    }

    // simplifying constructors
    static Ptr add(Ptr a, Ptr b)
    {
        if (is_const(a, 0)) return b;
        if (is_const(b, 0)) return a;
        return make(Op::Add, std::move(a), std::move(b));
    }
    static Ptr sub(Ptr a, Ptr b)
    {
        if (is_const(b, 0)) return a;
        if (is_const(a, 0)) return neg(std::move(b));
        return make(Op::Sub, std::move(a), std::move(b));
    }
    static Ptr mul(Ptr a, Ptr b)
    {
        if (is_const(a, 0) || is_const(b, 0)) return make_const(0);
        if (is_const(a, 1)) return b;
        if (is_const(b, 1)) return a;
        return make(Op::Mul, std::move(a), std::move(b));
    }
    static Ptr div(Ptr a, Ptr b)
    {
        if (is_const(a, 0)) return make_const(0);
        if (is_const(b, 1)) return a;
        return make(Op::Div, std::move(a), std::move(b));
    }
    static Ptr neg(Ptr a)
    {
        if (auto c = fold(*a)) return make_const(-*c);
        return make(Op::Neg, std::move(a), nullptr);
    }
    static Ptr pow(Ptr a, Ptr b)
    {
        if (is_const(b, 0)) return make_const(1);
        if (is_const(b, 1)) return a;
        return make(Op::Pow, std::move(a), std::move(b));
    }

    static Ptr diff(const Ptr& p, const std::string& x)
    {
        const Node& n = *p;
        switch (n.op) {
        case Op::Const: return make_const(0);
        case Op::Var: return make_const(n.name == x ? 1 : 0);
        case Op::Add: return add(diff(n.lhs, x), diff(n.rhs, x));
        case Op::Sub: return sub(diff(n.lhs, x), diff(n.rhs, x));
        case Op::Neg: return neg(diff(n.lhs, x));
        case Op::Mul: return add(mul(diff(n.lhs, x), n.rhs), mul(n.lhs, diff(n.rhs, x)));
        case Op::Div:
            // (u'v - uv') / v^2
            return div(sub(mul(diff(n.lhs, x), n.rhs), mul(n.lhs, diff(n.rhs, x))), pow(n.rhs, make_const(2)));
        case Op::Pow: {
            auto e = fold(*n.rhs);
            if (!e) throw DomainError("cannot differentiate a power with a variable exponent");
            return mul(mul(make_const(*e), pow(n.lhs, make_const(*e - 1))), diff(n.lhs, x));
        }
        }
        return make_const(0);
    }

    static double eval(const Node& n, const std::map<std::string, double>& env)
    {
        switch (n.op) {
        case Op::Const: return n.value.get_d();
        case Op::Var: {
            auto it = env.find(n.name);
            if (it == env.end()) throw DomainError("no value bound for variable '" + n.name + "'");
            return it->second;
        }
        case Op::Add: return eval(*n.lhs, env) + eval(*n.rhs, env);
        case Op::Sub: return eval(*n.lhs, env) - eval(*n.rhs, env);
        case Op::Mul: return eval(*n.lhs, env) * eval(*n.rhs, env);
        case Op::Div: return eval(*n.lhs, env) / eval(*n.rhs, env);
        case Op::Neg: return -eval(*n.lhs, env);
        case Op::Pow: {
            double base = eval(*n.lhs, env);
            if (auto e = fold(*n.rhs); e && e->get_den() == 1 && e->get_num().fits_slong_p()) {
                long k = e->get_num().get_si();
                double r = 1.0, b = k < 0 ? 1.0 / base : base;
                for (long m = std::labs(k); m > 0; m >>= 1) {
                    if (m & 1) r *= b;
                    b *= b;
                }
                return r;
            }
            return std::pow(base, eval(*n.rhs, env));
        }
        }
        return 0.0;
    }

    static std::string print(const Node& n)
    {
        switch (n.op) {
        case Op::Const: return n.value < 0 ? "(" + to_string(n.value) + ")" : to_string(n.value);
        case Op::Var: return n.name;
        case Op::Add: return "(" + print(*n.lhs) + " + " + print(*n.rhs) + ")";
        case Op::Sub: return "(" + print(*n.lhs) + " - " + print(*n.rhs) + ")";
        case Op::Mul: return "(" + print(*n.lhs) + "*" + print(*n.rhs) + ")";
        case Op::Div: return "(" + print(*n.lhs) + "/" + print(*n.rhs) + ")";
        case Op::Neg: return "-(" + print(*n.lhs) + ")";
        case Op::Pow: return "(" + print(*n.lhs) + ")^(" + print(*n.rhs) + ")";
        }
        return {};
    }

    struct Parser {
        std::string_view text;
        const std::set<std::string>& variables;
        std::size_t pos = 0;

        [[noreturn]] void fail(const std::string& msg) const
        {
            throw FormatError("expression '" + std::string(text) + "' at column " + std::to_string(pos + 1) + ": " + msg);
        }

        void skip_space()
        {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        }

        bool accept(char c)
        {
            skip_space();
            if (pos < text.size() && text[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        Ptr expression()
        {
            Ptr lhs = term();
            while (true) {
                if (accept('+'))
                    lhs = make(Op::Add, lhs, term());
                else if (accept('-'))
                    lhs = make(Op::Sub, lhs, term());
                else
                    return lhs;
            }
        }

        Ptr term()
        {
            Ptr lhs = unary();
            while (true) {
                if (accept('*'))
                    lhs = make(Op::Mul, lhs, unary());
                else if (accept('/'))
                    lhs = make(Op::Div, lhs, unary());
                else
                    return lhs;
            }
        }

        Ptr unary()
        {
            if (accept('-')) return make(Op::Neg, unary(), nullptr);
            if (accept('+')) return unary();
            return power();
        }

        Ptr power()
        {
            Ptr base = primary();
            if (accept('^')) return make(Op::Pow, base, unary());
            return base;
        }

        Ptr primary()
        {
            skip_space();
            if (pos >= text.size()) fail("unexpected end of input");
            char c = text[pos];
            if (c == '(') {
                ++pos;
                Ptr inner = expression();
                if (!accept(')')) fail("expected ')'");
                return inner;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t start = pos;
                while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
                    ++pos;
                auto q = try_parse_rational(text.substr(start, pos - start));
                if (!q) fail("bad number");
                return make_const(*q);
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos;
                while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                    ++pos;
                std::string name(text.substr(start, pos - start));
                if (!variables.count(name)) fail("unknown variable '" + name + "'");
                return make(Op::Var, nullptr, nullptr, 0, name);
            }
            fail("unexpected '" + std::string(1, c) + "'");
        }
    };

    Ptr node_;
};

} // namespace barcodes
