#pragma once

#include "gsp4/laurent.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace gsp4 {

// Rational function in u, a, b, g, d over Q, with u = q^{1/2}. Kept in a
// canonical form at all times: the denominator is a genuine polynomial free of
// monomial factors, reduced against the numerator's polynomial part, and monic
// in its lex-leading coefficient. Equality is literal equality of that form.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(int c) : num_(c), den_(1) {}
    RatFunc(const Rat& c) : num_(c), den_(1) {}
    RatFunc(const Laurent& num) : num_(num), den_(1) {}
    RatFunc(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }

    static RatFunc symbol(int idx, int exp = 1) {
        return RatFunc(Laurent::symbol(idx, exp));
    }
    static RatFunc u(int exp = 1) { return symbol(SymU, exp); }
    static RatFunc q(int exp = 1) { return symbol(SymU, 2 * exp); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Laurent(1) && den_ == Laurent(1); }

    // Rational constant if it is one.
    std::optional<Rat> as_rational() const {
        if (num_.is_zero()) return Rat(0);
        if (num_.is_constant() && den_ == Laurent(1))
            return num_.terms().begin()->second;
        return std::nullopt;
    }

    friend bool operator==(const RatFunc& x, const RatFunc& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const RatFunc& x, const RatFunc& y) { return !(x == y); }

    RatFunc operator-() const {
        RatFunc r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& x, const RatFunc& y) {
        return RatFunc(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RatFunc operator-(const RatFunc& x, const RatFunc& y) {
        return RatFunc(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RatFunc operator*(const RatFunc& x, const RatFunc& y) {
        return RatFunc(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend RatFunc operator/(const RatFunc& x, const RatFunc& y) {
        return RatFunc(x.num_ * y.den_, x.den_ * y.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inverse() const { return RatFunc(den_, num_); }

    RatFunc pow(long e) const {
        if (e == 0) return RatFunc(1);
        RatFunc base = e < 0 ? inverse() : *this;
        unsigned long n = e < 0 ? static_cast<unsigned long>(-e)
                                : static_cast<unsigned long>(e);
        RatFunc acc(1);
        while (n > 0) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

    // Evaluate with some symbols bound. Unbound symbols stay symbolic.
    RatFunc substitute(const std::map<int, RatFunc>& bind) const {
        RatFunc top = eval_laurent(num_, bind);
        RatFunc bot = eval_laurent(den_, bind);
        if (bot.is_zero())
            throw std::domain_error(
                "substitution makes a denominator factor vanish: " + str_of(den_));
        return top / bot;
    }

    std::string str() const {
        if (num_.is_zero()) return "0";
        std::string ns = str_of(num_);
        if (den_ == Laurent(1)) return ns;
        if (num_.terms().size() > 1) ns = "(" + ns + ")";
        return ns + "/(" + str_of(den_) + ")";
    }

    static RatFunc parse(const std::string& text);

private:
    Laurent num_, den_;

    void reduce() {
        if (den_.is_zero())
            throw std::domain_error("division by zero in coefficient field");
        if (num_.is_zero()) {
            den_ = Laurent(1);
            return;
        }
        // Shift the common Laurent content so the denominator becomes a
        // genuine polynomial with no monomial factor.
        Mono shift = mono_neg(den_.content_mono());
        den_ = den_.shifted(shift);
        num_ = num_.shifted(shift);
        // Split a monomial out of the numerator, reduce the polynomial parts.
        Mono nm = num_.content_mono();
        Laurent np = num_.shifted(mono_neg(nm));
        if (!den_.is_constant() && !np.is_constant()) {
            Laurent g = poly_gcd(np, den_);
            if (!g.is_constant()) {
                np = *try_divide(np, g);
                den_ = *try_divide(den_, g);
            }
        }
        Rat lc = den_.lead().second;
        den_ = den_.scaled(Rat(1) / lc);
        num_ = np.shifted(nm).scaled(Rat(1) / lc);
    }

    static RatFunc eval_laurent(const Laurent& p, const std::map<int, RatFunc>& bind) {
        RatFunc acc(0);
        for (const auto& [m, c] : p.terms()) {
            RatFunc term{Rat(c)};
            Mono residual = mono_zero();
            for (int i = 0; i < kSymbolCount; ++i) {
                if (m[i] == 0) continue;
                auto it = bind.find(i);
                if (it == bind.end())
                    residual[i] = m[i];
                else
                    term *= it->second.pow(m[i]);
            }
            if (residual != mono_zero())
                term *= RatFunc(Laurent::monomial(residual, 1));
            acc += term;
        }
        return acc;
    }

    static void append_coeff(std::string& out, const Rat& c, bool has_symbols) {
        Rat a = c < 0 ? Rat(-c) : c;
        if (a != 1 || !has_symbols) {
            out += rat_str(a);
            if (has_symbols) out += "*";
        }
    }

    static std::string str_of(const Laurent& p) {
        std::string out;
        bool first = true;
        // Descending lex order.
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            const auto& [m, c] = *it;
            if (first) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            first = false;
            std::string sym;
            int eu = m[SymU];
            int k = (eu >= 0 ? eu / 2 : -((-eu + 1) / 2));
            int r = eu - 2 * k;
            auto put = [&sym](char name, int e) {
                if (e == 0) return;
                if (!sym.empty()) sym += "*";
                sym += name;
                if (e != 1) sym += "^" + std::to_string(e);
            };
            put('q', k);
            put('u', r);
            put('a', m[SymA]);
            put('b', m[SymB]);
            put('g', m[SymG]);
            put('d', m[SymD]);
            append_coeff(out, c, !sym.empty());
            out += sym;
        }
        return out;
    }
};

// Unitary central character: the similitude square times both Satake
// parameters is one, which eliminates the second parameter.
inline const std::map<int, RatFunc>& central_character_bind() {
    static const std::map<int, RatFunc> bind{
        {SymB, (RatFunc::symbol(SymA) * RatFunc::symbol(SymG, 2)).inverse()}};
    return bind;
}

inline RatFunc central_reduce(const RatFunc& f) {
    return f.substitute(central_character_bind());
}

inline RatFunc operator+(int x, const RatFunc& y) { return RatFunc(x) + y; }
inline RatFunc operator-(int x, const RatFunc& y) { return RatFunc(x) - y; }
inline RatFunc operator*(int x, const RatFunc& y) { return RatFunc(x) * y; }
inline RatFunc operator/(int x, const RatFunc& y) { return RatFunc(x) / y; }

// coeff * ratio^start + coeff * ratio^{start+1} + ... as a rational function.
inline RatFunc sum_geometric(const RatFunc& coeff, const RatFunc& ratio, long start) {
    if ((RatFunc(1) - ratio).is_zero())
        throw std::domain_error("divergent formal series");
    return coeff * ratio.pow(start) / (RatFunc(1) - ratio);
}

namespace detail {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    RatFunc run() {
        RatFunc v = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw std::invalid_argument("trailing input in expression: " + s_);
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RatFunc expr() {
        RatFunc v = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    RatFunc term() {
        RatFunc v = factor();
        for (;;) {
            if (eat('*'))
                v *= factor();
            else if (eat('/'))
                v /= factor();
            else
                return v;
        }
    }

    RatFunc factor() {
        if (eat('-')) return -factor();
        RatFunc v = primary();
        if (eat('^')) v = v.pow(int_exponent());
        return v;
    }

    long int_exponent() {
        bool paren = eat('(');
        bool neg = eat('-');
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw std::invalid_argument("expected integer exponent in: " + s_);
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        if (paren && !eat(')'))
            throw std::invalid_argument("unbalanced exponent parentheses in: " + s_);
        return neg ? -v : v;
    }

    RatFunc primary() {
        char c = peek();
        if (c == '(') {
            eat('(');
            RatFunc v = expr();
            if (!eat(')'))
                throw std::invalid_argument("unbalanced parentheses in: " + s_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                v = v * 10 + (s_[pos_++] - '0');
            return RatFunc(Rat(v));
        }
        switch (c) {
            case 'q': ++pos_; return RatFunc::q();
            case 'u': ++pos_; return RatFunc::u();
            case 'a': ++pos_; return RatFunc::symbol(SymA);
            case 'b': ++pos_; return RatFunc::symbol(SymB);
            case 'g': ++pos_; return RatFunc::symbol(SymG);
            case 'd': ++pos_; return RatFunc::symbol(SymD);
            default:
                throw std::invalid_argument("unexpected character '" +
                                            std::string(1, c) + "' in: " + s_);
        }
    }
};

} // namespace detail

inline RatFunc RatFunc::parse(const std::string& text) {
    return detail::ExprParser(text).run();
}

} // namespace gsp4
