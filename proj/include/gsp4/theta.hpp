#pragma once

#include <array>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gsp4/cmpoints.hpp"
#include "gsp4/ratfunc.hpp"

namespace gsp4 {

namespace detail_cm {

// proper automorphs of a reduced positive definite form; all have entries in
// {-1, 0, 1}
inline std::vector<std::array<long long, 4>> proper_automorphs(const QuadForm& r) {
    std::vector<std::array<long long, 4>> out;
    for (long long a = -1; a <= 1; ++a)
        for (long long b = -1; b <= 1; ++b)
            for (long long c = -1; c <= 1; ++c)
                for (long long d = -1; d <= 1; ++d) {
                    if (a * d - b * c != 1) continue;
                    long long ra = r.a * a * a + r.b * a * c + r.c * c * c;
                    long long rb = 2 * (r.a * a * b + r.c * c * d) + r.b * (a * d + b * c);
                    long long rc = r.a * b * b + r.b * b * d + r.c * d * d;
                    if (ra == r.a && rb == r.b && rc == r.c) out.push_back({a, b, c, d});
                }
    return out;
}

// right translate F(h·) of a binary form
inline QuadForm form_apply(const QuadForm& f, long long h00, long long h01, long long h10,
                           long long h11) {
    return QuadForm{f.a * h00 * h00 + f.b * h00 * h10 + f.c * h10 * h10,
                    2 * (f.a * h00 * h01 + f.c * h10 * h11) + f.b * (h00 * h11 + h01 * h10),
                    f.a * h01 * h01 + f.b * h01 * h11 + f.c * h11 * h11};
}

// canonical tag of a projective point (x : y) over Z/m
inline long long p1_canon(long long x, long long y, long long m) {
    x %= m;
    if (x < 0) x += m;
    y %= m;
    if (y < 0) y += m;
    long long bx = m, by = m;
    bool seen = false;
    for (long long u = 1; u < m || (m == 1 && u == 1); ++u) {
        if (std::gcd(u, m) != 1) continue;
        long long cx = (u * x) % m, cy = (u * y) % m;
        if (!seen || cx < bx || (cx == bx && cy < by)) {
            bx = cx;
            by = cy;
            seen = true;
        }
        if (m == 1) break;
    }
    return bx * m + by;
}

// one coprime integer lift for every projective point over Z/m
inline std::vector<std::pair<long long, long long>> p1_lifts(long long m) {
    std::vector<std::pair<long long, long long>> out;
    if (m == 1) {
        out.push_back({1, 0});
        return out;
    }
    std::set<long long> seen;
    for (long long x = 0; x < m; ++x)
        for (long long y = 0; y < m; ++y) {
            if (std::gcd(std::gcd(x, y), m) != 1) continue;
            if (!seen.insert(p1_canon(x, y, m)).second) continue;
            long long lx = x, ly = y;
            while (std::gcd(lx, ly) != 1) lx += m;
            out.push_back({lx, ly});
        }
    return out;
}

} // namespace detail_cm

// class of a positive definite integral form under the proper level group
// (lower-left entry divisible by the level)
struct SymClassKey {
    QuadForm r;
    long long label = 0;

    bool operator<(const SymClassKey& o) const {
        if (!(r == o.r)) return r < o.r;
        return label < o.label;
    }
    bool operator==(const SymClassKey& o) const { return r == o.r && label == o.label; }
};

// reduce the form and tag the class of the reducing transform in the coset
// space of the level group
inline SymClassKey sym_class(const QuadForm& f, long long level) {
    if (f.a <= 0 || f.disc() >= 0) throw std::invalid_argument("form is not positive definite");
    long long a = f.a, b = f.b, c = f.c;
    // accumulate column operations: v maps the reduced frame to the input frame
    long long v00 = 1, v01 = 0, v10 = 0, v11 = 1;
    auto apply = [&](long long t00, long long t01, long long t10, long long t11) {
        long long n00 = v00 * t00 + v01 * t10;
        long long n01 = v00 * t01 + v01 * t11;
        long long n10 = v10 * t00 + v11 * t10;
        long long n11 = v10 * t01 + v11 * t11;
        v00 = n00;
        v01 = n01;
        v10 = n10;
        v11 = n11;
    };
    while (true) {
        if (std::llabs(b) > a) {
            long long k = detail_qf::to_ll(detail_qf::floor_div(Int(a) - Int(b), Int(2) * a));
            long long b2 = b + 2 * a * k;
            long long c2 = detail_qf::to_ll((Int(b2) * b2 - Int(f.disc())) / (Int(4) * a));
            apply(1, k, 0, 1);
            b = b2;
            c = c2;
            continue;
        }
        if (a > c) {
            apply(0, -1, 1, 0);
            long long t = a;
            a = c;
            c = t;
            b = -b;
            continue;
        }
        break;
    }
    if (b < 0 && -b == a) {
        apply(1, 1, 0, 1);
        b = -b;
    } else if (b < 0 && a == c) {
        apply(0, -1, 1, 0);
        b = -b;
    }
    QuadForm r{a, b, c};
    if (!is_reduced(r)) throw std::logic_error("reduction failed");
    // w = v^{-1}; the class label is the projective first column of w
    long long w00 = v11, w10 = -v10;
    long long best = -1;
    for (const auto& aut : detail_cm::proper_automorphs(r)) {
        long long x = aut[0] * w00 + aut[1] * w10;
        long long y = aut[2] * w00 + aut[3] * w10;
        long long tag = detail_cm::p1_canon(x, y, level);
        if (best < 0 || tag < best) best = tag;
    }
    return SymClassKey{r, best};
}

// Finitely supported coefficient function on classes of positive definite
// half-integral symmetric matrices, indexed by forms (a, b, c) with even part
// [[a, b/2], [b/2, c]].
struct FourierExpansion {
    long long level = 1;
    std::map<SymClassKey, std::pair<QuadForm, RatFunc>> coef;

    void set(const QuadForm& b, const RatFunc& v) {
        SymClassKey k = sym_class(b, level);
        coef[k] = {b, v};
    }

    void add(const QuadForm& b, const RatFunc& v) {
        SymClassKey k = sym_class(b, level);
        auto it = coef.find(k);
        if (it == coef.end())
            coef[k] = {b, v};
        else
            it->second.second = it->second.second + v;
    }

    RatFunc get(const QuadForm& b) const {
        auto it = coef.find(sym_class(b, level));
        if (it == coef.end()) return RatFunc();
        return it->second.second;
    }

    FourierExpansion& prune() {
        for (auto it = coef.begin(); it != coef.end();) {
            if (it->second.second.is_zero())
                it = coef.erase(it);
            else
                ++it;
        }
        return *this;
    }

    bool same_as(const FourierExpansion& o) const {
        if (level != o.level) return false;
        FourierExpansion a = *this, b = o;
        a.prune();
        b.prune();
        if (a.coef.size() != b.coef.size()) return false;
        for (const auto& [k, v] : a.coef) {
            auto it = b.coef.find(k);
            if (it == b.coef.end()) return false;
            if (!(it->second.second == v.second)) return false;
        }
        return true;
    }
};

inline FourierExpansion expansion_scale(const RatFunc& s, const FourierExpansion& f) {
    FourierExpansion out;
    out.level = f.level;
    for (const auto& [k, v] : f.coef) out.coef[k] = {v.first, s * v.second};
    return out;
}

inline FourierExpansion expansion_sub(const FourierExpansion& f, const FourierExpansion& g) {
    if (f.level != g.level) throw std::invalid_argument("expansion level mismatch");
    FourierExpansion out = f;
    for (const auto& [k, v] : g.coef) out.add(v.first, RatFunc(-1) * v.second);
    out.prune();
    return out;
}

enum class HeckeOp { UQ, UP };

// index transform t[u_p(x)] B u_p(x) for u_p(x) = [[p, x], [0, 1]]
inline QuadForm up_shift(const QuadForm& b, long long p, long long x) {
    return QuadForm{p * p * b.a, p * (2 * b.a * x + b.b), b.a * x * x + b.b * x + b.c};
}

// one representative of every level-group class of positive forms of the given
// discriminant, imprimitive forms included
inline std::vector<QuadForm> level_classes(long long disc, long long level) {
    std::vector<QuadForm> out;
    if (disc >= 0) return out;
    std::set<SymClassKey> seen;
    const auto lifts = detail_cm::p1_lifts(level);
    for (long long e = 1; e * e <= -disc; ++e) {
        if (disc % (e * e) != 0) continue;
        long long d0 = disc / (e * e);
        long long rem = ((d0 % 4) + 4) % 4;
        if (rem != 0 && rem != 1) continue;
        for (const QuadForm& r : reduced_forms(d0)) {
            QuadForm er{e * r.a, e * r.b, e * r.c};
            for (const auto& [x, y] : lifts) {
                Int uu, vv;
                detail_qf::ext_gcd(Int(x), Int(y), uu, vv);
                QuadForm cand = detail_cm::form_apply(er, x, -detail_qf::to_ll(vv), y,
                                                      detail_qf::to_ll(uu));
                if (seen.insert(sym_class(cand, level)).second) out.push_back(cand);
            }
        }
    }
    return out;
}

inline FourierExpansion fourier_uq(const FourierExpansion& f, long long p) {
    FourierExpansion out;
    out.level = f.level;
    auto eval = [&](const QuadForm& b) {
        RatFunc s;
        for (long long x = 1; x <= p; ++x) s = s + f.get(up_shift(b, p, x));
        return s;
    };
    // the output is supported on the divided discriminants; stored
    // representatives of an input class need not be aligned with any single
    // shift, so enumerate every candidate class of each such discriminant
    std::set<long long> discs;
    for (const auto& [key, rv] : f.coef) discs.insert(rv.first.disc());
    for (long long d : discs) {
        if (d % (p * p) != 0) continue;
        for (const QuadForm& b : level_classes(d / (p * p), out.level)) {
            SymClassKey k = sym_class(b, out.level);
            if (out.coef.count(k)) continue;
            out.coef[k] = {b, eval(b)};
        }
    }
    out.prune();
    return out;
}

inline FourierExpansion fourier_up(const FourierExpansion& f, long long p) {
    FourierExpansion out;
    out.level = f.level;
    for (const auto& [key, rv] : f.coef) {
        const QuadForm& s = rv.first;
        if (s.a % p != 0 || s.b % p != 0 || s.c % p != 0) continue;
        QuadForm b{s.a / p, s.b / p, s.c / p};
        SymClassKey k = sym_class(b, out.level);
        if (out.coef.count(k)) continue;
        out.coef[k] = {b, f.get(QuadForm{p * b.a, p * b.b, p * b.c})};
    }
    out.prune();
    return out;
}

inline FourierExpansion fourier_hecke(const FourierExpansion& f, HeckeOp op, long long p) {
    return op == HeckeOp::UQ ? fourier_uq(f, p) : fourier_up(f, p);
}

// degree-four stabilization: peel the non-ordinary Frobenius eigenvalues off a
// form with Satake data (alpha_p, beta_p) of weight kappa, with p carried as
// the square of the half-power symbol
inline FourierExpansion stabilize_form(const FourierExpansion& f, const RatFunc& alpha_p,
                                       const RatFunc& beta_p, long long kappa, long long p) {
    RatFunc pw = RatFunc::u(2 * (2 * kappa - 3)); // p^{2 kappa - 3}
    RatFunc alpha_q = RatFunc::u(2 * (2 - kappa)) * alpha_p * beta_p;
    RatFunc beta_q = RatFunc::u(2 * (kappa - 1)) * alpha_p * beta_p.inverse();
    auto shifted = [&](const FourierExpansion& g, HeckeOp op, const RatFunc& c) {
        return expansion_sub(fourier_hecke(g, op, p), expansion_scale(c, g));
    };
    FourierExpansion out = shifted(f, HeckeOp::UP, beta_p);
    out = shifted(out, HeckeOp::UP, pw * beta_p.inverse());
    out = shifted(out, HeckeOp::UP, pw * alpha_p.inverse());
    out = shifted(out, HeckeOp::UQ, beta_q);
    RatFunc norm = (alpha_p.pow(3) * alpha_q).inverse();
    return expansion_scale(norm, out);
}

// Theta element at tower level n: coefficients indexed like the level-n ring
// class group elements.
struct ThetaElement {
    int level = 0;
    std::vector<RatFunc> coeff;

    bool same_as(const ThetaElement& o) const {
        if (level != o.level || coeff.size() != o.coeff.size()) return false;
        for (size_t i = 0; i < coeff.size(); ++i)
            if (!(coeff[i] == o.coeff[i])) return false;
        return true;
    }
};

inline ThetaElement theta_element(const FourierExpansion& f, const CMTower& t, int n,
                                  const RatFunc& alpha_q) {
    if (n < 0 || n > t.cls.n) throw std::invalid_argument("tower level out of range");
    if (f.level != t.points.at(0).at(0).emb.p * t.points.at(0).at(0).emb.nplus)
        throw std::invalid_argument("expansion level does not match the tower");
    ThetaElement th;
    th.level = n;
    RatFunc pref = alpha_q.inverse().pow(n);
    const auto& pts = t.points.at(n);
    th.coeff.reserve(pts.size());
    for (const auto& q : pts) th.coeff.push_back(pref * f.get(q.emb.s_form()));
    return th;
}

inline ThetaElement theta_pushforward(const ThetaElement& th, const CMTower& t) {
    if (th.level < 1 || th.level > t.cls.n) throw std::invalid_argument("cannot push below the base level");
    ThetaElement out;
    out.level = th.level - 1;
    out.coeff.assign(t.cls.levels[th.level - 1].size(), RatFunc());
    const auto& proj = t.cls.down[th.level - 1];
    for (size_t i = 0; i < th.coeff.size(); ++i)
        out.coeff[proj[i]] = out.coeff[proj[i]] + th.coeff[i];
    return out;
}

} // namespace gsp4
