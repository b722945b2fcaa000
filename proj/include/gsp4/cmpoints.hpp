#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <boost/multiprecision/eigen.hpp>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gsp4/quadfield.hpp"

namespace gsp4 {

using Mat2 = Eigen::Matrix<Rat, 2, 2>;

namespace detail_cm {

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

inline Int to_int(const Rat& x) {
    if (!is_integer(x)) throw std::logic_error("expected an integer entry");
    return numerator(x);
}

inline long long to_ll(const Rat& x) { return detail_qf::to_ll(to_int(x)); }

inline Mat2 mat2(long long a, long long b, long long c, long long d) {
    Mat2 m;
    m << Rat(a), Rat(b), Rat(c), Rat(d);
    return m;
}

// explicit 2x2 products and inverses; lazy expression templates do not mix
// with the multiprecision scalar
inline Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return m;
}

inline Rat det(const Mat2& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

inline bool eq(const Mat2& a, const Mat2& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

inline Mat2 inv(const Mat2& a) {
    Rat d = det(a);
    if (d == 0) throw std::logic_error("singular matrix");
    Mat2 m;
    m(0, 0) = a(1, 1) / d;
    m(0, 1) = -a(0, 1) / d;
    m(1, 0) = -a(1, 0) / d;
    m(1, 1) = a(0, 0) / d;
    return m;
}

// column Hermite basis [[h11, h12], [0, h22]] of the lattice spanned by the
// given integer column vectors
inline std::array<Int, 3> hnf2(const std::vector<std::pair<Int, Int>>& gens) {
    Int t = 0, v0 = 0;
    std::vector<Int> pure;
    for (const auto& [u, v] : gens) {
        if (v == 0) {
            pure.push_back(u);
            continue;
        }
        if (v0 == 0) {
            t = u;
            v0 = v;
            continue;
        }
        Int x, y;
        Int g = detail_qf::ext_gcd(v0, v, x, y);
        pure.push_back((v / g) * t - (v0 / g) * u);
        t = x * t + y * u;
        v0 = g;
    }
    Int h11 = 0;
    for (const Int& x : pure) h11 = gcd(h11, x);
    if (h11 < 0) h11 = -h11;
    if (v0 < 0) {
        v0 = -v0;
        t = -t;
    }
    if (h11 == 0 || v0 == 0) throw std::logic_error("degenerate lattice");
    t %= h11;
    if (t < 0) t += h11;
    return {h11, t, v0};
}

} // namespace detail_cm

// Eichler order of the given level: integer matrices, lower left divisible by
// the level.
struct EichlerOrder {
    long long level = 1;

    bool contains(const Mat2& x) const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!detail_cm::is_integer(x(i, j))) return false;
        return detail_cm::to_int(x(1, 0)) % level == 0;
    }
};

// Optimal embedding of the order of conductor p^n in Q(sqrt(-delta)), given by
// the image of the canonical generator (s_n + sqrt(disc))/2.
struct OptimalEmbedding {
    Mat2 w;
    long long delta = 3;
    long long p = 5;
    int n = 0;
    long long nplus = 1;

    long long disc() const {
        long long d = -delta;
        for (int i = 0; i < n; ++i) d *= p * p;
        return d;
    }

    long long order_level() const { return n >= 1 ? p * nplus : nplus; }

    EichlerOrder order() const { return EichlerOrder{order_level()}; }

    long long parity() const { return std::llabs(disc()) % 2; }

    // the symmetric matrix index attached to the embedding, as a binary form
    QuadForm s_form() const {
        long long A = detail_cm::to_ll(w(0, 0));
        long long B = detail_cm::to_ll(w(0, 1));
        long long C = detail_cm::to_ll(w(1, 0));
        long long E = detail_cm::to_ll(w(1, 1));
        QuadForm f{C, E - A, -B};
        if (f.a < 0) {
            f.a = -f.a;
            f.b = -f.b;
            f.c = -f.c;
        }
        if (f.a <= 0 || f.c <= 0) throw std::logic_error("embedding index is not definite");
        return f;
    }

    void validate() const {
        long long D = disc();
        long long s = parity();
        Rat tr = w(0, 0) + w(1, 1);
        Rat det = w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0);
        if (tr != Rat(s)) throw std::invalid_argument("embedding trace mismatch");
        if (det != Rat(s * s - D) / 4) throw std::invalid_argument("embedding norm mismatch");
        if (!order().contains(w)) throw std::invalid_argument("embedding does not land in the order");
        QuadForm f = s_form();
        if (std::gcd(std::gcd(f.a, f.b), f.c) != 1)
            throw std::invalid_argument("embedding index is imprimitive");
        if (f.disc() != D) throw std::logic_error("embedding index has the wrong discriminant");
        if (n >= 1) {
            // the only larger candidate order has conductor p^{n-1}
            long long d0 = D / (p * p);
            long long s0 = std::llabs(d0) % 2;
            Mat2 cand;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    cand(i, j) = (Rat(2) * w(i, j) + Rat(i == j ? p * s0 - s : 0)) / Rat(2 * p);
            if (order().contains(cand))
                throw std::invalid_argument("embedding is not optimal at p");
        }
    }
};

struct CMPoint {
    OptimalEmbedding emb;

    QuadForm reduced_class() const { return detail_qf::reduce_form(emb.s_form().a, emb.s_form().b, emb.s_form().c); }
};

// base point of conductor 1: the regular representation of (s + sqrt(-delta))/2
// on the principal ideal
inline CMPoint base_cm_point(long long delta, long long p, long long nplus) {
    ImagQuadField field(delta);
    if (delta % p == 0) throw std::invalid_argument("p must not divide the field discriminant");
    if (nplus % p == 0) throw std::invalid_argument("p must not divide the tame level");
    for (long long ell = 2; ell <= nplus; ++ell) {
        if (nplus % ell != 0) continue;
        bool prime = true;
        for (long long d = 2; d * d <= ell; ++d)
            if (ell % d == 0) prime = false;
        if (!prime) continue;
        if (splitting_type(ell, delta) != SplitType::Split)
            throw std::invalid_argument("every prime of the tame level must split");
    }
    long long s = delta % 2;
    long long m = (s * s + delta) / 4;
    CMPoint pt;
    pt.emb.delta = delta;
    pt.emb.p = p;
    pt.emb.n = 0;
    pt.emb.nplus = nplus;
    pt.emb.w = detail_cm::mat2(0, -m, 1, s);
    if (nplus > 1) {
        // move the index form into a class with leading coefficient divisible
        // by the tame level
        QuadForm f = pt.emb.s_form();
        Int fa = f.a, fb = f.b, fc = f.c;
        for (Int bound = 1;; ++bound) {
            bool found = false;
            for (Int x = -bound; x <= bound && !found; ++x)
                for (Int y = -bound; y <= bound && !found; ++y) {
                    Int ax = abs(x), ay = abs(y);
                    if ((ax > ay ? ax : ay) != bound) continue;
                    if (gcd(x, y) != 1) continue;
                    Int val = fa * x * x + fb * x * y + fc * y * y;
                    if (val % nplus != 0) continue;
                    Int u, v;
                    detail_qf::ext_gcd(x, y, u, v);
                    Int r = -v, sc = u;
                    Int a2 = val;
                    Int b2 = 2 * (fa * x * r + fc * y * sc) + fb * (x * sc + y * r);
                    Int c2 = fa * r * r + fb * r * sc + fc * sc * sc;
                    long long A = detail_qf::to_ll((Int(s) - b2) / 2);
                    long long E = detail_qf::to_ll((Int(s) + b2) / 2);
                    pt.emb.w = detail_cm::mat2(A, -detail_qf::to_ll(c2), detail_qf::to_ll(a2), E);
                    found = true;
                }
            if (found) break;
            if (bound > 64) throw std::invalid_argument("local obstruction: no admissible base index");
        }
    }
    pt.emb.validate();
    return pt;
}

// lift along the tower: the conductor-p^{n+1} member of the fixed base chain
inline CMPoint tower_lift(const CMPoint& pt) {
    const auto& e = pt.emb;
    if (e.nplus != 1) throw std::invalid_argument("tower lift is implemented for tame level one");
    long long s = e.delta % 2;
    long long m = (s * s + e.delta) / 4;
    // expected base-chain member at level n
    auto chain = [&](int k) {
        long long pk = 1;
        for (int i = 0; i < k; ++i) pk *= e.p;
        if (k == 0) return detail_cm::mat2(0, -m, 1, s);
        // conjugate of the base embedding by [[0,-1],[p^k,0]], shifted to the
        // canonical generator of the conductor-p^k order
        long long sk = (e.delta * pk * pk) % 2;
        Mat2 t = detail_cm::mat2(s * pk, -1, pk * pk * m, 0);
        t(0, 0) += Rat((sk - pk * s) / 2);
        t(1, 1) += Rat((sk - pk * s) / 2);
        return t;
    };
    if (!detail_cm::eq(e.w, chain(e.n)))
        throw std::invalid_argument("point is not on the fixed base chain");
    CMPoint out;
    out.emb = e;
    out.emb.n = e.n + 1;
    out.emb.w = chain(e.n + 1);
    out.emb.validate();
    return out;
}

// Translate a point by an ideal class of its order, by transporting the
// defining lattice pair and recomputing the change of basis.
inline CMPoint galois_translate(const CMPoint& pt, const QuadForm& cls) {
    const auto& e = pt.emb;
    const long long D = e.disc();
    if (cls.disc() != D) throw std::invalid_argument("class has the wrong discriminant");
    const long long M = e.order_level();
    Int a = cls.a, b = cls.b, c = cls.c;
    detail_qf::make_leading_coprime(a, b, c, Int(M) * e.p);
    const long long s = e.parity();
    // ideal basis (a, k + w) with k = (-b - s)/2
    if ((-b - s) % 2 != 0) throw std::logic_error("ideal generator parity failure");
    Int k = (-b - s) / 2;
    Mat2 gen = e.w;
    gen(0, 0) += Rat(k);
    gen(1, 1) += Rat(k);
    auto col = [&](const Mat2& g, int j) {
        return std::pair<Int, Int>(detail_cm::to_int(g(0, j)), detail_cm::to_int(g(1, j)));
    };
    std::vector<std::pair<Int, Int>> g0 = {{a, Int(0)}, {Int(0), a}, col(gen, 0), col(gen, 1)};
    std::vector<std::pair<Int, Int>> g1 = {{a, Int(0)},
                                           {Int(0), a * M},
                                           col(gen, 0),
                                           {detail_cm::to_int(gen(0, 1)) * M, detail_cm::to_int(gen(1, 1)) * M}};
    auto h0 = detail_cm::hnf2(g0);
    auto h1 = detail_cm::hnf2(g1);
    Mat2 H0, H1;
    H0 << Rat(h0[0]), Rat(h0[1]), Rat(0), Rat(h0[2]);
    H1 << Rat(h1[0]), Rat(h1[1]), Rat(0), Rat(h1[2]);
    // N = H0^{-1} H1 spans the preimage of the second lattice
    Mat2 N = detail_cm::mul(detail_cm::inv(H0), H1);
    Int n00 = detail_cm::to_int(N(0, 0)), n01 = detail_cm::to_int(N(0, 1));
    Int n10 = detail_cm::to_int(N(1, 0)), n11 = detail_cm::to_int(N(1, 1));
    // primitive vector of the sublattice, extended to a unimodular basis
    Int w1x = 0, w1y = 0;
    bool found = false;
    for (Int bound = 0; bound <= 2 * M + 2 && !found; ++bound) {
        for (Int x = -bound; x <= bound && !found; ++x) {
            for (Int y = -bound; y <= bound && !found; ++y) {
                Int ax = abs(x), ay = abs(y);
                if ((ax > ay ? ax : ay) != bound) continue;
                Int vx = x * n00 + y * n01;
                Int vy = x * n10 + y * n11;
                if (vx == 0 && vy == 0) continue;
                if (gcd(vx, vy) == 1) {
                    w1x = vx;
                    w1y = vy;
                    found = true;
                }
            }
        }
    }
    if (!found) throw std::logic_error("lattice quotient is not cyclic");
    Int uu, vv;
    detail_qf::ext_gcd(w1x, w1y, uu, vv);
    Mat2 U;
    U << Rat(w1x), Rat(-vv), Rat(w1y), Rat(uu);
    Mat2 gamma = detail_cm::mul(H0, U);
    Rat dg = gamma(0, 0) * gamma(1, 1) - gamma(0, 1) * gamma(1, 0);
    if (dg == 0) throw std::logic_error("degenerate change of basis");
    if (dg < 0) {
        gamma(0, 1) = -gamma(0, 1);
        gamma(1, 1) = -gamma(1, 1);
    }
    CMPoint out;
    out.emb = e;
    out.emb.w = detail_cm::mul(detail_cm::mul(detail_cm::inv(gamma), e.w), gamma);
    out.emb.validate();
    return out;
}

// Full CM tower: ring class groups to level n with one point per class at
// every level, aligned with the group element order.
struct CMTower {
    RingClassTower cls;
    std::vector<std::vector<CMPoint>> points;

    const CMPoint& point(int level, int idx) const { return points.at(level).at(idx); }
};

inline CMTower cm_tower(long long delta, long long p, int n, long long nplus) {
    CMTower t;
    t.cls = ring_class_tower(delta, p, n);
    CMPoint base = base_cm_point(delta, p, nplus);
    for (int k = 0; k <= n; ++k) {
        const RingClassGroup& g = t.cls.levels[k];
        std::vector<CMPoint> pts;
        pts.reserve(g.size());
        std::vector<QuadForm> covered;
        for (int i = 0; i < g.size(); ++i) {
            CMPoint q = galois_translate(base, g.elements[i]);
            covered.push_back(q.reduced_class());
            pts.push_back(std::move(q));
        }
        std::sort(covered.begin(), covered.end());
        if (!std::equal(covered.begin(), covered.end(), g.elements.begin()))
            throw std::logic_error("translation orbit does not cover the classes");
        t.points.push_back(std::move(pts));
        if (k < n) base = tower_lift(base);
    }
    return t;
}

inline std::vector<CMPoint> enumerate_cm_points(long long delta, long long p, int n, long long nplus) {
    return cm_tower(delta, p, n, nplus).points.at(n);
}

} // namespace gsp4
