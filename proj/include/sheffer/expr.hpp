#pragma once

// A deliberately tiny arithmetic grammar over x: literals, x, + - *,
// ^ with nonnegative integer exponents, parentheses, unary minus.
// Small enough that derivatives are exact, which is what the
// derivative-norm bounds need for user-supplied functions.

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace sheffer {

class Expr {
public:
    enum class Kind { constant, var, add, sub, mul, neg, pow };

    static Expr constant(double v) { return Expr(std::make_shared<Node>(Node{Kind::constant, v, 0, nullptr, nullptr})); }
    static Expr var() { return Expr(std::make_shared<Node>(Node{Kind::var, 0, 0, nullptr, nullptr})); }
    static Expr add(Expr a, Expr b) { return binary(Kind::add, std::move(a), std::move(b)); }
    static Expr sub(Expr a, Expr b) { return binary(Kind::sub, std::move(a), std::move(b)); }
    static Expr mul(Expr a, Expr b) { return binary(Kind::mul, std::move(a), std::move(b)); }
    static Expr neg(Expr a) {
        return Expr(std::make_shared<Node>(Node{Kind::neg, 0, 0, a.n_, nullptr}));
    }
    static Expr pow(Expr base, int exponent) {
        if (exponent < 0) throw std::invalid_argument("expr: exponent must be >= 0");
        return Expr(std::make_shared<Node>(Node{Kind::pow, 0, exponent, base.n_, nullptr}));
    }

    double operator()(double x) const { return eval(*n_, x); }

    Expr derivative() const { return diff(*n_); }

    std::string str() const { return print(*n_); }

    bool operator==(const Expr& o) const { return equal(*n_, *o.n_); }

    // Recursive-descent parser for the grammar above.
    static Expr parse(const std::string& text) {
        Parser p{text, 0};
        Expr e = p.expr();
        p.skip_ws();
        if (p.pos != text.size())
            throw std::invalid_argument("expr: trailing input at position " +
                                        std::to_string(p.pos));
        return e;
    }

private:
    struct Node {
        Kind kind;
        double value;
        int exponent;
        std::shared_ptr<const Node> a, b;
    };
    std::shared_ptr<const Node> n_;
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    static Expr binary(Kind k, Expr a, Expr b) {
        return Expr(std::make_shared<Node>(Node{k, 0, 0, a.n_, b.n_}));
    }

    static double eval(const Node& n, double x) {
        switch (n.kind) {
            case Kind::constant: return n.value;
            case Kind::var: return x;
            case Kind::add: return eval(*n.a, x) + eval(*n.b, x);
            case Kind::sub: return eval(*n.a, x) - eval(*n.b, x);
            case Kind::mul: return eval(*n.a, x) * eval(*n.b, x);
            case Kind::neg: return -eval(*n.a, x);
            case Kind::pow: return std::pow(eval(*n.a, x), n.exponent);
        }
        return 0;
    }

    static Expr diff(const Node& n) {
        switch (n.kind) {
            case Kind::constant: return constant(0);
            case Kind::var: return constant(1);
            case Kind::add: return add(diff(*n.a), diff(*n.b));
            case Kind::sub: return sub(diff(*n.a), diff(*n.b));
            case Kind::mul:
                return add(mul(diff(*n.a), Expr(n.b)), mul(Expr(n.a), diff(*n.b)));
            case Kind::neg: return neg(diff(*n.a));
            case Kind::pow:
                if (n.exponent == 0) return constant(0);
                return mul(mul(constant(n.exponent), pow(Expr(n.a), n.exponent - 1)),
                           diff(*n.a));
        }
        return constant(0);
    }

    // fully parenthesized, so printing and parsing are exact inverses
    static std::string print(const Node& n) {
        switch (n.kind) {
            case Kind::constant: {
                char buf[32];
                auto [p, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
                return std::string(buf, p);
            }
            case Kind::var: return "x";
            case Kind::add: return "(" + print(*n.a) + "+" + print(*n.b) + ")";
            case Kind::sub: return "(" + print(*n.a) + "-" + print(*n.b) + ")";
            case Kind::mul: return "(" + print(*n.a) + "*" + print(*n.b) + ")";
            case Kind::neg: return "(-" + print(*n.a) + ")";
            case Kind::pow:
                return "(" + print(*n.a) + "^" + std::to_string(n.exponent) + ")";
        }
        return {};
    }

    static bool equal(const Node& a, const Node& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::constant: return a.value == b.value;
            case Kind::var: return true;
            case Kind::neg: return equal(*a.a, *b.a);
            case Kind::pow: return a.exponent == b.exponent && equal(*a.a, *b.a);
            default: return equal(*a.a, *b.a) && equal(*a.b, *b.b);
        }
    }

    struct Parser {
        const std::string& s;
        std::size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool accept(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        [[noreturn]] void fail(const std::string& what) {
            throw std::invalid_argument("expr: " + what + " at position " +
                                        std::to_string(pos));
        }

        Expr expr() {
            Expr e = term();
            for (;;) {
                if (accept('+')) e = Expr::add(e, term());
                else if (accept('-')) e = Expr::sub(e, term());
                else return e;
            }
        }
        Expr term() {
            Expr e = factor();
            while (accept('*')) e = Expr::mul(e, factor());
            return e;
        }
        Expr factor() {
            if (accept('-')) return Expr::neg(factor());
            Expr e = atom();
            if (accept('^')) {
                skip_ws();
                int exponent = 0;
                auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), exponent);
                if (ec != std::errc{} || exponent < 0) fail("expected nonnegative integer exponent");
                pos = std::size_t(p - s.data());
                return Expr::pow(e, exponent);
            }
            return e;
        }
        Expr atom() {
            skip_ws();
            if (accept('(')) {
                Expr e = expr();
                if (!accept(')')) fail("expected ')'");
                return e;
            }
            if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'X')) {
                ++pos;
                return Expr::var();
            }
            double v = 0;
            auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
            if (ec != std::errc{}) fail("expected number, 'x' or '('");
            pos = std::size_t(p - s.data());
            return Expr::constant(v);
        }
    };
};

}  // namespace sheffer
