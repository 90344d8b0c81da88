#include "logchi/parse.hpp"

#include <cctype>
#include <string>

namespace logchi {

namespace {

// Values during parsing are kept polynomial as long as possible and
// promoted to quotients on the first non-constant division.
struct Value {
    ParsedExpr v;

    static Value of(Poly p) { return Value{ParsedExpr(std::move(p))}; }
    static Value of(RatFunc f) { return Value{ParsedExpr(std::move(f))}; }

    bool is_poly() const { return std::holds_alternative<Poly>(v); }
    const Poly& poly() const { return std::get<Poly>(v); }
    RatFunc as_ratfunc() const {
        if (is_poly()) return RatFunc(poly());
        return std::get<RatFunc>(v);
    }
};

Value apply(const Value& a, const Value& b, char op) {
    if (a.is_poly() && b.is_poly()) {
        switch (op) {
        case '+': return Value::of(a.poly() + b.poly());
        case '-': return Value::of(a.poly() - b.poly());
        case '*': return Value::of(a.poly() * b.poly());
        case '/': {
            const Poly& den = b.poly();
            if (den.is_zero()) throw input_error("division by the zero polynomial");
            if (den.is_constant()) {
                Rational inv = Rational(1) / den.constant_value();
                return Value::of(a.poly() * inv);
            }
            return Value::of(RatFunc(a.poly(), den));
        }
        }
    }
    RatFunc fa = a.as_ratfunc(), fb = b.as_ratfunc();
    switch (op) {
    case '+': return Value::of(fa + fb);
    case '-': return Value::of(fa - fb);
    case '*': return Value::of(fa * fb);
    case '/': return Value::of(fa / fb);
    }
    throw internal_error("unknown operator");
}

class Parser {
public:
    Parser(std::string_view text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

    Value run() {
        Value v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("syntax error at position " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Value expr() {
        bool neg = false;
        skip_ws();
        while (true) {
            if (eat('-')) neg = !neg;
            else if (eat('+')) continue;
            else break;
        }
        Value acc = term();
        if (neg) acc = apply(Value::of(Poly::constant(ctx_, Rational(-1))), acc, '*');
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                acc = apply(acc, term(), c);
            } else {
                return acc;
            }
        }
    }

    Value term() {
        Value acc = factor();
        while (true) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                acc = apply(acc, factor(), c);
            } else {
                return acc;
            }
        }
    }

    Value factor() {
        Value base = atom();
        while (eat('^')) {
            unsigned e = read_uint();
            if (base.is_poly()) {
                base = Value::of(base.poly().pow(e));
            } else {
                RatFunc f = base.as_ratfunc();
                RatFunc acc(Poly::constant(ctx_, Rational(1)));
                for (unsigned i = 0; i < e; ++i) acc = acc * f;
                base = Value::of(acc);
            }
        }
        return base;
    }

    Value atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected an operand");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (c == '-' || c == '+') {
            ++pos_;
            Value v = atom();
            if (c == '-') return apply(Value::of(Poly::constant(ctx_, Rational(-1))), v, '*');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Value::of(Poly::constant(ctx_, Rational(read_natural())));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            auto idx = ctx_->index_of(name);
            if (!idx) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return Value::of(Poly::variable(ctx_, *idx));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    unsigned read_uint() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a non-negative integer exponent");
        unsigned long v = std::stoul(std::string(read_digits()));
        return static_cast<unsigned>(v);
    }

    mpz_class read_natural() {
        return mpz_class(std::string(read_digits()));
    }

    std::string_view read_digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::string_view text_;
    ContextPtr ctx_;
    std::size_t pos_ = 0;
};

} // namespace

ParsedExpr parse_expr(std::string_view text, const ContextPtr& ctx) {
    return Parser(text, ctx).run().v;
}

Poly parse_poly(std::string_view text, const ContextPtr& ctx) {
    ParsedExpr e = parse_expr(text, ctx);
    if (auto* p = std::get_if<Poly>(&e)) return *p;
    throw input_error("expression is a rational function, expected a polynomial: " +
                      std::string(text));
}

} // namespace logchi
