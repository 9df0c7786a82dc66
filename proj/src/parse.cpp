#include "jetgauge/parse.hpp"

#include <cctype>

namespace jetgauge {

namespace {

struct Parser {
    const std::string& s;
    const ContextPtr& ctx;
    std::size_t pos = 0;

    Parser(const std::string& text, const ContextPtr& c) : s(text), ctx(c) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw parse_error(std::string("expected '") + c + "'", pos);
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos != s.size()) fail("unexpected trailing input");
        return e;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+'))
                e = add(e, term());
            else if (accept('-'))
                e = sub(e, term());
            else
                return e;
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (accept('*'))
                e = mul(e, factor());
            else if (accept('/'))
                e = div(e, factor());
            else
                return e;
        }
    }

    Expr factor() {
        bool negate = accept('-');
        Expr a = atom();
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            Rational q = signed_rational();
            a = powr(a, q);
        }
        return negate ? neg(a) : a;
    }

    Expr atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit((unsigned char)c) || c == '.') return number();
        if (std::isalpha((unsigned char)c)) return ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    // digits [. digits] [(e|E) [+|-] digits], converted exactly.
    Expr number() {
        std::size_t start = pos;
        Rational v(0);
        bool any = false;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * Rational(10) + Rational(s[pos] - '0');
            any = true;
            ++pos;
        }
        if (pos < s.size() && s[pos] == '.') {
            ++pos;
            Rational scale(1, 10);
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                v += Rational(s[pos] - '0') * scale;
                scale /= Rational(10);
                any = true;
                ++pos;
            }
        }
        if (!any) throw parse_error("malformed number", start);
        if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
            std::size_t save = pos;
            ++pos;
            bool negexp = false;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                negexp = s[pos] == '-';
                ++pos;
            }
            if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                long long e = 0;
                while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                    e = e * 10 + (s[pos] - '0');
                    if (e > 18) throw parse_error("exponent out of range", pos);
                    ++pos;
                }
                Rational ten(10);
                v = negexp ? v / ten.pow(e) : v * ten.pow(e);
            } else {
                pos = save;  // the 'e' belongs to something else
            }
        }
        return num(v);
    }

    Expr ident() {
        std::size_t start = pos;
        std::string name;
        while (pos < s.size() &&
               (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) {
            name += s[pos];
            ++pos;
        }
        if (name == "pi") return pi_const();
        FuncTag tag;
        bool is_func = true;
        if (name == "sin")
            tag = FuncTag::Sin;
        else if (name == "cos")
            tag = FuncTag::Cos;
        else if (name == "sqrt")
            tag = FuncTag::Sqrt;
        else if (name == "exp")
            tag = FuncTag::Exp;
        else if (name == "log")
            tag = FuncTag::Log;
        else
            is_func = false;
        if (is_func) {
            expect('(');
            Expr a = expr();
            expect(')');
            return call(tag, a);
        }
        auto id = ctx->id_of(name);
        if (!id) throw parse_error("unknown identifier '" + name + "'", start);
        return sym(ctx, *id);
    }

    // Lexed immediately after '^': [-] digits [/ digits]; the slash is taken
    // only when a digit follows, so "u^2/v" divides by v.
    Rational signed_rational() {
        skip_ws();
        bool negv = false;
        if (pos < s.size() && s[pos] == '-') {
            negv = true;
            ++pos;
        }
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
            fail("expected a rational exponent");
        long long n = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            n = n * 10 + (s[pos] - '0');
            if (n > (1LL << 40)) fail("exponent out of range");
            ++pos;
        }
        long long d = 1;
        if (pos + 1 < s.size() && s[pos] == '/' &&
            std::isdigit((unsigned char)s[pos + 1])) {
            ++pos;
            d = 0;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                d = d * 10 + (s[pos] - '0');
                if (d > (1LL << 40)) fail("exponent out of range");
                ++pos;
            }
        }
        Rational q(n, d);
        return negv ? -q : q;
    }
};

}  // namespace

Expr parse_expr(const std::string& text, const ContextPtr& ctx) {
    Parser p(text, ctx);
    return p.parse();
}

}  // namespace jetgauge
