#pragma once

#include "gsp4/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace gsp4 {

// Symbol order fixes the monomial order: u (= q^{1/2}) dominates, then a, b, g, d.
inline constexpr int kSymbolCount = 5;
inline constexpr char kSymbolNames[kSymbolCount] = {'u', 'a', 'b', 'g', 'd'};

enum Symbol : int { SymU = 0, SymA = 1, SymB = 2, SymG = 3, SymD = 4 };

using Mono = std::array<int32_t, kSymbolCount>;

inline Mono mono_zero() { return Mono{0, 0, 0, 0, 0}; }

inline Mono mono_add(const Mono& x, const Mono& y) {
    Mono r;
    for (int i = 0; i < kSymbolCount; ++i) r[i] = x[i] + y[i];
    return r;
}

inline Mono mono_sub(const Mono& x, const Mono& y) {
    Mono r;
    for (int i = 0; i < kSymbolCount; ++i) r[i] = x[i] - y[i];
    return r;
}

inline Mono mono_neg(const Mono& x) {
    Mono r;
    for (int i = 0; i < kSymbolCount; ++i) r[i] = -x[i];
    return r;
}

// Sparse Laurent polynomial over Q in the five symbols. Zero coefficients are
// never stored; the std::array key gives lexicographic term order for free.
class Laurent {
public:
    using TermMap = std::map<Mono, Rat>;

    Laurent() = default;
    Laurent(const Rat& c) {
        if (c != 0) terms_[mono_zero()] = c;
    }
    Laurent(int c) : Laurent(Rat(c)) {}

    static Laurent monomial(const Mono& m, const Rat& c) {
        Laurent p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    static Laurent symbol(int idx, int exp = 1) {
        Mono m = mono_zero();
        m[idx] = exp;
        return monomial(m, 1);
    }

    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == mono_zero());
    }

    bool is_monomial() const { return terms_.size() == 1; }

    // All exponents nonnegative (genuine polynomial).
    bool is_polynomial() const {
        for (const auto& [m, c] : terms_)
            for (int i = 0; i < kSymbolCount; ++i)
                if (m[i] < 0) return false;
        return true;
    }

    // Largest term in lex order.
    std::pair<Mono, Rat> lead() const { return *terms_.rbegin(); }

    // Componentwise minimum exponent over all terms (the monomial content).
    Mono content_mono() const {
        Mono m = terms_.begin()->first;
        for (const auto& [k, c] : terms_)
            for (int i = 0; i < kSymbolCount; ++i)
                if (k[i] < m[i]) m[i] = k[i];
        return m;
    }

    Laurent shifted(const Mono& s) const {
        Laurent r;
        for (const auto& [m, c] : terms_) r.terms_[mono_add(m, s)] = c;
        return r;
    }

    void add_term(const Mono& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Laurent operator-() const {
        Laurent r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Laurent& operator-=(const Laurent& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Laurent operator+(Laurent x, const Laurent& y) { return x += y; }
    friend Laurent operator-(Laurent x, const Laurent& y) { return x -= y; }

    friend Laurent operator*(const Laurent& x, const Laurent& y) {
        Laurent r;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_)
                r.add_term(mono_add(mx, my), cx * cy);
        return r;
    }

    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    Laurent scaled(const Rat& c) const {
        Laurent r;
        if (c == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    friend bool operator==(const Laurent& x, const Laurent& y) {
        return x.terms_ == y.terms_;
    }

    int degree_in(int v) const {
        int d = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (first || m[v] > d) d = m[v];
            first = false;
        }
        return d;
    }

    bool involves(int v) const {
        for (const auto& [m, c] : terms_)
            if (m[v] != 0) return true;
        return false;
    }

private:
    TermMap terms_;
};

// Exact division of genuine polynomials: returns a/b when b divides a.
inline std::optional<Laurent> try_divide(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) return std::nullopt;
    Laurent r = a, quot;
    const auto [mb, cb] = b.lead();
    while (!r.is_zero()) {
        const auto [mr, cr] = r.lead();
        Mono d = mono_sub(mr, mb);
        for (int i = 0; i < kSymbolCount; ++i)
            if (d[i] < 0) return std::nullopt;
        Laurent t = Laurent::monomial(d, cr / cb);
        quot += t;
        r -= t * b;
    }
    return quot;
}

namespace detail {

// Dense coefficient vector in variable v; entries do not involve v.
inline std::vector<Laurent> coeffs_in(const Laurent& p, int v) {
    std::vector<Laurent> cs(static_cast<size_t>(p.degree_in(v)) + 1);
    for (const auto& [m, c] : p.terms()) {
        Mono rest = m;
        int e = m[v];
        rest[v] = 0;
        cs[static_cast<size_t>(e)].add_term(rest, c);
    }
    while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
    return cs;
}

inline Laurent from_coeffs(const std::vector<Laurent>& cs, int v) {
    Laurent p;
    for (size_t e = 0; e < cs.size(); ++e) {
        Mono shift = mono_zero();
        shift[v] = static_cast<int32_t>(e);
        p += cs[e].shifted(shift);
    }
    return p;
}

// Pseudo-remainder of A by B with respect to v (deg_v A >= deg_v B >= 0).
inline Laurent prem(const Laurent& A, const Laurent& B, int v) {
    auto a = coeffs_in(A, v);
    auto b = coeffs_in(B, v);
    const int da = static_cast<int>(a.size()) - 1;
    const int db = static_cast<int>(b.size()) - 1;
    const Laurent lb = b[static_cast<size_t>(db)];
    for (int k = da - db; k >= 0; --k) {
        Laurent top = a[static_cast<size_t>(db + k)];
        for (auto& c : a) c = c * lb;
        for (int i = 0; i <= db; ++i)
            a[static_cast<size_t>(i + k)] -= top * b[static_cast<size_t>(i)];
    }
    a.resize(static_cast<size_t>(db > 0 ? db : 1));
    return from_coeffs(a, v);
}

inline std::array<Rat, kSymbolCount> eval_point(int attempt) {
    constexpr int base[kSymbolCount] = {2, 3, 5, 7, 11};
    std::array<Rat, kSymbolCount> pt;
    for (int i = 0; i < kSymbolCount; ++i)
        pt[static_cast<size_t>(i)] = Rat(base[i] + attempt * (13 + i));
    return pt;
}

inline Rat eval_all(const Laurent& p, const std::array<Rat, kSymbolCount>& pt) {
    Rat s = 0;
    for (const auto& [m, c] : p.terms()) {
        Rat t = c;
        for (int i = 0; i < kSymbolCount; ++i)
            if (m[i] != 0) t *= rat_pow(pt[static_cast<size_t>(i)], m[i]);
        s += t;
    }
    return s;
}

inline std::vector<Rat> univar_eval_coeffs(const Laurent& p, int v,
                                           const std::array<Rat, kSymbolCount>& pt) {
    auto cs = coeffs_in(p, v);
    std::vector<Rat> out(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) out[i] = eval_all(cs[i], pt);
    return out;
}

inline std::vector<Int> to_int_vec(const std::vector<Rat>& p) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::lcm;
    using boost::multiprecision::numerator;
    Int l = 1;
    for (const auto& c : p) l = lcm(l, denominator(c));
    std::vector<Int> q(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        q[i] = numerator(p[i]) * (l / denominator(p[i]));
    return q;
}

inline int univar_deg_int(const std::vector<Int>& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d >= 0 && p[static_cast<size_t>(d)] == 0) --d;
    return d;
}

inline void univar_strip(std::vector<Int>& p) {
    using boost::multiprecision::gcd;
    Int g = 0;
    for (const auto& c : p) g = gcd(g, c);
    if (g > 1)
        for (auto& c : p) c /= g;
}

// Primitive gcd in Z[t]; pseudo-remainders with per-step content removal.
inline std::vector<Int> univar_gcd_int(std::vector<Int> x, std::vector<Int> y) {
    univar_strip(x);
    univar_strip(y);
    while (true) {
        int dx = univar_deg_int(x);
        int dy = univar_deg_int(y);
        if (dy < 0) {
            if (dx < 0) return {Int(0)};
            x.resize(static_cast<size_t>(dx) + 1);
            if (x.back() < 0)
                for (auto& c : x) c = -c;
            return x;
        }
        if (dx < dy) {
            x.swap(y);
            continue;
        }
        if (dy == 0) return {Int(1)};
        const Int ly = y[static_cast<size_t>(dy)];
        for (int k = dx - dy; k >= 0; --k) {
            Int top = x[static_cast<size_t>(k + dy)];
            if (top == 0) continue;
            for (auto& c : x) c *= ly;
            for (int i = 0; i <= dy; ++i)
                x[static_cast<size_t>(i + k)] -= top * y[static_cast<size_t>(i)];
        }
        x.resize(static_cast<size_t>(dy));
        univar_strip(x);
        x.swap(y);
    }
}

// Index of the only symbol occurring in p, -1 if several, -2 if none.
inline int single_variable(const Laurent& p) {
    int var = -2;
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < kSymbolCount; ++i)
            if (m[i] != 0) {
                if (var == -2) var = i;
                else if (var != i) return -1;
            }
    return var;
}

inline std::vector<Rat> univar_rat_coeffs(const Laurent& p, int v) {
    auto cs = coeffs_in(p, v);
    std::vector<Rat> out(cs.size());
    for (size_t i = 0; i < cs.size(); ++i)
        out[i] = cs[i].is_zero() ? Rat(0) : cs[i].lead().second;
    return out;
}

inline Laurent univar_to_laurent(const std::vector<Int>& cs, int v) {
    Laurent p;
    for (size_t i = 0; i < cs.size(); ++i) {
        if (cs[i] == 0) continue;
        Mono m = mono_zero();
        m[v] = static_cast<int32_t>(i);
        p.add_term(m, Rat(cs[i]));
    }
    return p;
}

inline Laurent laurent_pow(const Laurent& p, int e) {
    Laurent r(1);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

inline Laurent checked_div(const Laurent& a, const Laurent& b) {
    auto q = try_divide(a, b);
    if (!q) throw std::logic_error("inexact polynomial division");
    return *q;
}

} // namespace detail

inline Laurent poly_content_in(const Laurent& p, int v);

// Gcd of genuine polynomials over Q, monic with respect to the lex leading
// coefficient. Primitive pseudo-remainder sequence, recursing on variables.
inline Laurent poly_gcd(const Laurent& a, const Laurent& b) {
    auto monic = [](const Laurent& p) {
        if (p.is_zero()) return p;
        return p.scaled(Rat(1) / p.lead().second);
    };
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Laurent(1);
    if (try_divide(a, b)) return monic(b);
    if (try_divide(b, a)) return monic(a);
    const int va = detail::single_variable(a);
    const int vb = detail::single_variable(b);
    if (va >= 0 && vb >= 0) {
        if (va != vb) return Laurent(1);
        auto g = detail::univar_gcd_int(
            detail::to_int_vec(detail::univar_rat_coeffs(a, va)),
            detail::to_int_vec(detail::univar_rat_coeffs(b, va)));
        return monic(detail::univar_to_laurent(g, va));
    }
    int v = kSymbolCount - 1;
    while (!a.involves(v) && !b.involves(v)) --v;
    if (!a.involves(v)) return poly_gcd(a, poly_content_in(b, v));
    if (!b.involves(v)) return poly_gcd(poly_content_in(a, v), b);
    Laurent ca = poly_content_in(a, v);
    Laurent cb = poly_content_in(b, v);
    Laurent cg = poly_gcd(ca, cb);
    Laurent A = detail::checked_div(a, ca);
    Laurent B = detail::checked_div(b, cb);
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
    // Coprime primitive parts are the common case; certify them from
    // univariate images instead of running a remainder sequence. At any point
    // where the leading v-coefficient of A survives, deg_v gcd(A, B) is
    // bounded by the degree of the image gcd.
    {
        const Laurent la = detail::coeffs_in(A, v).back();
        int valid = 0;
        for (int attempt = 0; attempt < 10 && valid < 4; ++attempt) {
            auto pt = detail::eval_point(attempt);
            if (detail::eval_all(la, pt) == 0) continue;
            ++valid;
            auto g = detail::univar_gcd_int(
                detail::to_int_vec(detail::univar_eval_coeffs(A, v, pt)),
                detail::to_int_vec(detail::univar_eval_coeffs(B, v, pt)));
            if (detail::univar_deg_int(g) == 0) return monic(cg);
        }
    }
    // Subresultant remainder sequence: the divisors are known exactly, so no
    // content extraction is needed inside the loop.
    Laurent lead(1), hpow(1);
    while (true) {
        const int delta = A.degree_in(v) - B.degree_in(v);
        Laurent R = detail::prem(A, B, v);
        if (R.is_zero()) break;
        if (R.degree_in(v) == 0) return monic(cg);
        Laurent divisor = lead * detail::laurent_pow(hpow, delta);
        A = B;
        B = detail::checked_div(R, divisor);
        lead = detail::coeffs_in(A, v).back();
        if (delta == 1) {
            hpow = lead;
        } else if (delta > 1) {
            hpow = detail::checked_div(detail::laurent_pow(lead, delta),
                                       detail::laurent_pow(hpow, delta - 1));
        }
    }
    Laurent pp = detail::checked_div(B, poly_content_in(B, v));
    return monic(cg * pp);
}

inline Laurent poly_content_in(const Laurent& p, int v) {
    Laurent g;
    for (const auto& c : detail::coeffs_in(p, v)) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

} // namespace gsp4
