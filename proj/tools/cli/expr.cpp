#include "cli/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>

#include "imcf/errors.hpp"

namespace imcf::cli {

namespace {

// Each node evaluates on the parameter jet. Constants are tracked so that
// x^n with a constant integer n can avoid the log in the general power.
struct Node {
    ScalarFn fn;
    bool constant = false;
    double value = 0.0;
};

Node constant(double v) { return {[v](const Jet&) { return Jet(v); }, true, v}; }

class Parser {
public:
    explicit Parser(std::string_view t) : text_(t) {}

    Node parse()
    {
        Node n = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError("expression '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) + ": "
                          + what);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Node expr()
    {
        Node a = term();
        for (;;) {
            if (eat('+')) {
                a = combine(a, term(), [](const Jet& x, const Jet& y) { return x + y; });
            } else if (eat('-')) {
                a = combine(a, term(), [](const Jet& x, const Jet& y) { return x - y; });
            } else {
                return a;
            }
        }
    }

    Node term()
    {
        Node a = unary();
        for (;;) {
            if (eat('*')) {
                a = combine(a, unary(), [](const Jet& x, const Jet& y) { return x * y; });
            } else if (eat('/')) {
                a = combine(a, unary(), [](const Jet& x, const Jet& y) { return x / y; });
            } else {
                return a;
            }
        }
    }

    Node unary()
    {
        if (eat('-')) {
            Node a = unary();
            if (a.constant) return constant(-a.value);
            return {[f = a.fn](const Jet& s) { return -f(s); }};
        }
        if (eat('+')) return unary();
        return power();
    }

    Node power()
    {
        Node base = atom();
        if (!eat('^')) return base;
        Node ex = unary();
        if (!ex.constant) {
            return {[b = base.fn, e = ex.fn](const Jet& s) { return exp(e(s) * log(b(s))); }};
        }
        const double p = ex.value;
        if (base.constant) return constant(std::pow(base.value, p));
        if (p >= 0.0 && p == std::floor(p) && p <= 64.0) {
            const int n = static_cast<int>(p);
            return {[b = base.fn, n](const Jet& s) { return powi(b(s), n); }};
        }
        return {[b = base.fn, p](const Jet& s) { return pow(b(s), p); }};
    }

    Node atom()
    {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Node n = expr();
            if (!eat(')')) fail("missing ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Node number()
    {
        double v = 0.0;
        const char* first = text_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
        if (ec != std::errc()) fail("bad number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return constant(v);
    }

    Node name()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string id(text_.substr(start, pos_ - start));
        if (id == "s") return {[](const Jet& s) { return s; }};
        if (id == "pi") return constant(M_PI);
        if (id == "e") return constant(M_E);

        Jet (*f)(const Jet&) = nullptr;
        if (id == "sin") f = &sin;
        else if (id == "cos") f = &cos;
        else if (id == "exp") f = &exp;
        else if (id == "log") f = &log;
        else if (id == "sqrt") f = &sqrt;
        else if (id == "sinh") f = &sinh;
        else if (id == "cosh") f = &cosh;
        else if (id == "abs") f = &abs;
        else {
            pos_ = start;
            fail("unknown name '" + id + "'");
        }
        if (!eat('(')) fail("expected '(' after " + id);
        Node arg = expr();
        if (!eat(')')) fail("missing ')'");
        if (arg.constant) return constant(f(Jet(arg.value)).value());
        return {[f, a = arg.fn](const Jet& s) { return f(a(s)); }};
    }

    template <class Op>
    static Node combine(const Node& a, const Node& b, Op op)
    {
        if (a.constant && b.constant) return constant(op(Jet(a.value), Jet(b.value)).value());
        return {[fa = a.fn, fb = b.fn, op](const Jet& s) { return op(fa(s), fb(s)); }};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

ScalarFn compile_expression(std::string_view text)
{
    if (text.find_first_not_of(" \t") == std::string_view::npos) throw ConfigError("empty expression");
    return Parser(text).parse().fn;
}

} // namespace imcf::cli
