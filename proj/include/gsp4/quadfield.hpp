#pragma once

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gsp4/lfactors.hpp"
#include "gsp4/rational.hpp"

namespace gsp4 {

// Kronecker symbol (a|n), defined for all integers n.
inline int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos % 2 == 1) {
        long long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) result = -result;
    }
    a = ((a % n) + n) % n;
    while (a != 0) {
        twos = 0;
        while (a % 2 == 0) {
            a /= 2;
            ++twos;
        }
        if (twos % 2 == 1 && (n % 8 == 3 || n % 8 == 5)) result = -result;
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        long long t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? result : 0;
}

inline bool is_fundamental_discriminant(long long d) {
    if (d >= 0) return false;
    auto squarefree = [](long long m) {
        m = std::llabs(m);
        for (long long q = 2; q * q <= m; ++q)
            if (m % (q * q) == 0) return false;
        return true;
    };
    long long r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree(d);
    if (r == 0) {
        long long q = d / 4;
        long long qr = ((q % 4) + 4) % 4;
        return (qr == 2 || qr == 3) && squarefree(q);
    }
    return false;
}

// Imaginary quadratic field encoded by Delta > 0 with -Delta fundamental.
struct ImagQuadField {
    long long delta;
    int units;

    explicit ImagQuadField(long long delta_in)
        : delta(delta_in), units(delta_in == 3 ? 6 : delta_in == 4 ? 4 : 2) {
        if (!is_fundamental_discriminant(-delta))
            throw std::invalid_argument("-delta must be a fundamental discriminant");
    }
};

inline SplitType splitting_type(long long ell, long long delta) {
    int k = kronecker(-delta, ell);
    if (k > 0) return SplitType::Split;
    if (k < 0) return SplitType::Inert;
    return SplitType::Ramified;
}

// Primitive positive definite integral binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    long long a = 1;
    long long b = 0;
    long long c = 0;

    long long disc() const { return b * b - 4 * a * c; }

    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

inline bool is_reduced(const QuadForm& f) {
    if (std::llabs(f.b) > f.a || f.a > f.c) return false;
    if ((std::llabs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

namespace detail_qf {

inline Int floor_div(const Int& x, const Int& y) {
    Int q = x / y;
    if ((x % y) != 0 && ((x < 0) != (y < 0))) --q;
    return q;
}

// g = gcd(x, y) together with u x + v y = g, g >= 0.
inline Int ext_gcd(const Int& x, const Int& y, Int& u, Int& v) {
    if (y == 0) {
        if (x < 0) {
            u = -1;
            v = 0;
            return -x;
        }
        u = 1;
        v = 0;
        return x;
    }
    Int u1, v1;
    Int g = ext_gcd(y, x % y, u1, v1);
    u = v1;
    v = u1 - (x / y) * v1;
    return g;
}

inline long long to_ll(const Int& x) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        throw std::overflow_error("form coefficient does not fit 64 bits");
    return static_cast<long long>(x);
}

inline QuadForm reduce_form(Int a, Int b, Int c) {
    const Int D = b * b - 4 * a * c;
    if (a <= 0 || D >= 0) throw std::invalid_argument("form must be positive definite");
    while (true) {
        if (b > a || b <= -a) {
            Int k = floor_div(a - b, 2 * a);
            b += 2 * a * k;
            c = (b * b - D) / (4 * a);
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        break;
    }
    if (b < 0 && (b == -a || a == c)) b = -b;
    return QuadForm{to_ll(a), to_ll(b), to_ll(c)};
}

// Replace f by an equivalent form whose leading coefficient is coprime to m.
inline void make_leading_coprime(Int& a, Int& b, Int& c, const Int& m) {
    if (gcd(a, m) == 1) return;
    for (Int bound = 1;; ++bound) {
        for (Int x = -bound; x <= bound; ++x) {
            for (Int y = -bound; y <= bound; ++y) {
                Int ax = abs(x), ay = abs(y);
                if ((ax > ay ? ax : ay) != bound) continue;
                if (gcd(x, y) != 1) continue;
                Int val = a * x * x + b * x * y + c * y * y;
                if (gcd(val, m) != 1) continue;
                Int u, v;
                ext_gcd(x, y, u, v);
                // columns (x, y), (-v, u) have determinant xu + yv = 1 up to sign fix
                Int r = -v, s = u;
                if (x * s - y * r != 1) {
                    r = -r;
                    s = -s;
                }
                Int a2 = val;
                Int b2 = 2 * (a * x * r + c * y * s) + b * (x * s + y * r);
                Int c2 = a * r * r + b * r * s + c * s * s;
                a = a2;
                b = b2;
                c = c2;
                return;
            }
        }
        if (bound > 64) throw std::logic_error("no representative coprime to the given modulus");
    }
}

inline Int crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    Int u, v;
    Int g = ext_gcd(m1, m2, u, v);
    if ((r2 - r1) % g != 0) throw std::logic_error("incompatible congruences in composition");
    Int lcm = m1 / g * m2;
    Int t = ((r2 - r1) / g % (m2 / g)) * u % (m2 / g);
    Int x = (r1 + m1 * t) % lcm;
    if (x < 0) x += lcm;
    return x;
}

} // namespace detail_qf

inline QuadForm principal_form(long long disc) {
    long long b0 = std::llabs(disc) % 2;
    return QuadForm{1, b0, (b0 * b0 - disc) / 4};
}

inline QuadForm form_inverse(const QuadForm& f) {
    return detail_qf::reduce_form(f.a, -f.b, f.c);
}

// Gauss composition of primitive forms of equal negative discriminant.
inline QuadForm compose(const QuadForm& f, const QuadForm& g) {
    if (f.disc() != g.disc()) throw std::invalid_argument("forms must share a discriminant");
    const Int D = f.disc();
    Int a1 = f.a, b1 = f.b, c1 = f.c;
    Int a2 = g.a, b2 = g.b, c2 = g.c;
    detail_qf::make_leading_coprime(a2, b2, c2, a1);
    Int B = detail_qf::crt(b1, 2 * a1, b2, 2 * a2);
    Int A = a1 * a2;
    if ((B * B - D) % (4 * A) != 0) throw std::logic_error("composition produced a non-integral form");
    return detail_qf::reduce_form(A, B, (B * B - D) / (4 * A));
}

inline QuadForm form_pow(QuadForm f, long long e) {
    QuadForm acc = principal_form(f.disc());
    if (e < 0) {
        f = form_inverse(f);
        e = -e;
    }
    while (e > 0) {
        if (e & 1) acc = compose(acc, f);
        f = compose(f, f);
        e >>= 1;
    }
    return acc;
}

inline std::vector<QuadForm> reduced_forms(long long disc) {
    long long r = ((disc % 4) + 4) % 4;
    if (disc >= 0 || (r != 0 && r != 1))
        throw std::invalid_argument("discriminant must be negative and 0 or 1 mod 4");
    const long long absd = -disc;
    std::vector<QuadForm> out;
    for (long long b = absd % 2; 3 * b * b <= absd; b += 2) {
        const long long m = (b * b + absd) / 4;
        for (long long a = std::max<long long>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) continue;
            const long long c = m / a;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back(QuadForm{a, b, c});
            if (b != 0 && b != a && a != c) out.push_back(QuadForm{a, -b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline long long count_reduced_forms(long long disc) {
    long long r = ((disc % 4) + 4) % 4;
    if (disc >= 0 || (r != 0 && r != 1))
        throw std::invalid_argument("discriminant must be negative and 0 or 1 mod 4");
    const long long absd = -disc;
    long long count = 0;
    for (long long b = absd % 2; 3 * b * b <= absd; b += 2) {
        const long long m = (b * b + absd) / 4;
        for (long long a = std::max<long long>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) continue;
            const long long c = m / a;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            count += (b == 0 || b == a || a == c) ? 1 : 2;
        }
    }
    return count;
}

// Class group of an order, elements stored as reduced forms with a full
// composition table checked to be an abelian group law.
struct RingClassGroup {
    long long disc = -3;
    std::vector<QuadForm> elements;
    std::vector<std::vector<int>> table;
    int identity = 0;

    int size() const { return static_cast<int>(elements.size()); }

    int index_of(const QuadForm& f) const {
        auto it = std::lower_bound(elements.begin(), elements.end(), f);
        if (it == elements.end() || !(*it == f))
            throw std::logic_error("form is not reduced of this discriminant");
        return static_cast<int>(it - elements.begin());
    }

    int mul(int i, int j) const { return table[i][j]; }

    int inv(int i) const {
        for (int j = 0; j < size(); ++j)
            if (table[i][j] == identity) return j;
        throw std::logic_error("element without inverse");
    }

    int pow(int i, long long e) const {
        if (e < 0) return pow(inv(i), -e);
        int acc = identity;
        while (e > 0) {
            if (e & 1) acc = mul(acc, i);
            i = mul(i, i);
            e >>= 1;
        }
        return acc;
    }

    long long element_order(int i) const {
        long long o = 1;
        int x = i;
        while (x != identity) {
            x = mul(x, i);
            ++o;
        }
        return o;
    }

    long long exponent() const {
        long long e = 1;
        for (int i = 0; i < size(); ++i) e = std::lcm(e, element_order(i));
        return e;
    }
};

inline RingClassGroup class_group(long long disc) {
    RingClassGroup g;
    g.disc = disc;
    g.elements = reduced_forms(disc);
    const int h = g.size();
    g.identity = g.index_of(principal_form(disc));
    g.table.assign(h, std::vector<int>(h, -1));
    for (int i = 0; i < h; ++i)
        for (int j = i; j < h; ++j) {
            int k = g.index_of(compose(g.elements[i], g.elements[j]));
            g.table[i][j] = k;
            g.table[j][i] = k;
        }
    for (int i = 0; i < h; ++i) {
        if (g.table[g.identity][i] != i) throw std::logic_error("identity law fails");
        std::vector<char> seen(h, 0);
        bool has_identity = false;
        for (int j = 0; j < h; ++j) {
            if (seen[g.table[i][j]]) throw std::logic_error("composition row is not a permutation");
            seen[g.table[i][j]] = 1;
            if (g.table[i][j] == g.identity) has_identity = true;
        }
        if (!has_identity) throw std::logic_error("element without inverse");
    }
    if (h <= 40) {
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                for (int k = 0; k < h; ++k)
                    if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k)))
                        throw std::logic_error("composition is not associative");
    } else {
        for (int t = 0; t < 512; ++t) {
            int i = (t * 7919) % h, j = (t * 104729 + 1) % h, k = (t * 1299709 + 2) % h;
            if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k)))
                throw std::logic_error("composition is not associative");
        }
    }
    return g;
}

// Class number of the order of conductor p^n, by the conductor formula and by
// direct enumeration of reduced forms; the two must agree.
inline long long ring_class_number(long long delta, long long p, int n) {
    ImagQuadField field(delta);
    if (n < 0) throw std::invalid_argument("level must be nonnegative");
    long long hk = count_reduced_forms(-delta);
    long long formula = hk;
    if (n >= 1) {
        long long unit_index = field.units / 2;
        long long value = hk * (p - kronecker(-delta, p));
        for (int i = 1; i < n; ++i) value *= p;
        if (value % unit_index != 0)
            throw std::logic_error("conductor formula is not integral");
        formula = value / unit_index;
    }
    long long disc = -delta;
    for (int i = 0; i < n; ++i) disc *= p * p;
    long long enumerated = count_reduced_forms(disc);
    if (formula != enumerated)
        throw std::logic_error("conductor formula disagrees with form enumeration");
    return formula;
}

// Push a class of discriminant disc down to discriminant disc / p^2 by
// extending a representative ideal prime to p to the larger order.
inline QuadForm extend_class(const QuadForm& f, long long p) {
    const Int D1 = f.disc();
    if (D1 >= 0 || D1 % (Int(p) * p) != 0) throw std::invalid_argument("discriminant is not divisible by p^2");
    const Int D0 = D1 / (Int(p) * p);
    Int a = f.a, b = f.b, c = f.c;
    detail_qf::make_leading_coprime(a, b, c, p);
    const Int s0 = ((D0 % 2) + 2) % 2;
    // lattice vectors (u, v) encode (u + v sqrt(D0)) / 2
    auto mul = [&](std::pair<Int, Int> x, std::pair<Int, Int> y) {
        return std::pair<Int, Int>((x.first * y.first + x.second * y.second * D0) / 2,
                                   (x.first * y.second + x.second * y.first) / 2);
    };
    std::vector<std::pair<Int, Int>> gens;
    gens.emplace_back(2 * a, 0);
    gens.emplace_back(a * s0, a);
    gens.emplace_back(-b, p);
    gens.push_back(mul({-b, p}, {s0, 1}));
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
        Int gg = detail_qf::ext_gcd(v0, v, x, y);
        pure.push_back((v / gg) * t - (v0 / gg) * u);
        t = x * t + y * u;
        v0 = gg;
    }
    Int u0 = 0;
    for (const Int& x : pure) u0 = gcd(u0, x);
    if (v0 < 0) {
        v0 = -v0;
        t = -t;
    }
    if (u0 == 0 || v0 == 0) throw std::logic_error("ideal extension degenerated");
    t %= u0;
    if (u0 % (2 * v0) != 0 || t % v0 != 0 || (t * t - v0 * v0 * D0) % (2 * u0 * v0) != 0)
        throw std::logic_error("ideal extension produced a non-integral form");
    return detail_qf::reduce_form(u0 / (2 * v0), -(t / v0), (t * t - v0 * v0 * D0) / (2 * u0 * v0));
}

// Tower of ring class groups for conductors p^0, ..., p^n with the projection
// maps between consecutive levels.
struct RingClassTower {
    long long delta = 3;
    long long p = 2;
    int n = 0;
    std::vector<RingClassGroup> levels;
    std::vector<std::vector<int>> down; // down[k][i]: image of level k+1 element i in level k

    int project(int from, int to, int idx) const {
        if (to > from || from > n || to < 0) throw std::invalid_argument("bad tower levels");
        for (int k = from; k > to; --k) idx = down[k - 1][idx];
        return idx;
    }
};

inline RingClassTower ring_class_tower(long long delta, long long p, int n) {
    ImagQuadField field(delta);
    RingClassTower t;
    t.delta = delta;
    t.p = p;
    t.n = n;
    long long disc = -delta;
    for (int k = 0; k <= n; ++k) {
        t.levels.push_back(class_group(disc));
        disc *= p * p;
    }
    for (int k = 0; k < n; ++k) {
        const RingClassGroup& up = t.levels[k + 1];
        const RingClassGroup& lo = t.levels[k];
        std::vector<int> proj(up.size());
        for (int i = 0; i < up.size(); ++i)
            proj[i] = lo.index_of(extend_class(up.elements[i], p));
        t.down.push_back(std::move(proj));
    }
    return t;
}

// Exact root of unity exp(2 pi i k / m), normalized to 0 <= k < m, gcd(k, m) = 1
// unless k = 0.
struct CycRoot {
    long long num = 0;
    long long den = 1;

    CycRoot() = default;
    CycRoot(long long k, long long m) {
        if (m <= 0) throw std::invalid_argument("root order must be positive");
        k %= m;
        if (k < 0) k += m;
        long long g = std::gcd(k, m);
        if (g == 0) g = m;
        num = k / g;
        den = m / g;
        if (num == 0) den = 1;
    }

    bool is_one() const { return num == 0; }
    long long order() const { return den; }

    CycRoot operator*(const CycRoot& o) const {
        long long m = std::lcm(den, o.den);
        return CycRoot(num * (m / den) + o.num * (m / o.den), m);
    }

    CycRoot inverse() const { return CycRoot(-num, den); }

    CycRoot pow(long long e) const {
        long long r = e % den;
        return CycRoot(num * r, den);
    }

    bool operator==(const CycRoot& o) const { return num == o.num && den == o.den; }
    bool operator!=(const CycRoot& o) const { return !(*this == o); }

    std::complex<double> to_complex() const {
        double arg = 2.0 * 3.14159265358979323846 * static_cast<double>(num) / static_cast<double>(den);
        return {std::cos(arg), std::sin(arg)};
    }
};

// Character of the top level of a tower, values as exact roots of unity.
struct AnticycChar {
    std::vector<CycRoot> values;
    int conductor = 0;

    const CycRoot& operator()(int idx) const { return values.at(idx); }

    long long order() const {
        long long o = 1;
        for (const CycRoot& v : values) o = std::lcm(o, v.order());
        return o;
    }
};

namespace detail_qf {

inline int char_conductor(const RingClassTower& t, const std::vector<CycRoot>& values) {
    const RingClassGroup& top = t.levels[t.n];
    for (int m = 0; m <= t.n; ++m) {
        bool trivial = true;
        for (int i = 0; i < top.size() && trivial; ++i)
            if (t.project(t.n, m, i) == t.levels[m].identity && !values[i].is_one())
                trivial = false;
        if (trivial) return m;
    }
    throw std::logic_error("character not trivial on the trivial subgroup");
}

} // namespace detail_qf

// Extend a value assignment on generators to a character by multiplicativity;
// throws if the assignment is inconsistent or does not generate.
inline AnticycChar anticyc_character(const RingClassTower& t, const std::map<int, CycRoot>& assign) {
    const RingClassGroup& g = t.levels[t.n];
    const int h = g.size();
    std::vector<CycRoot> values(h);
    std::vector<char> known(h, 0);
    values[g.identity] = CycRoot();
    known[g.identity] = 1;
    for (const auto& [idx, val] : assign) {
        if (idx < 0 || idx >= h) throw std::invalid_argument("assignment index out of range");
        if (known[idx] && values[idx] != val)
            throw std::invalid_argument("assignment is inconsistent with the group law");
        values[idx] = val;
        known[idx] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < h; ++i) {
            if (!known[i]) continue;
            for (int j = 0; j < h; ++j) {
                if (!known[j]) continue;
                int k = g.mul(i, j);
                CycRoot v = values[i] * values[j];
                if (known[k]) {
                    if (values[k] != v) throw std::invalid_argument("assignment is inconsistent with the group law");
                } else {
                    values[k] = v;
                    known[k] = 1;
                    changed = true;
                }
            }
        }
    }
    if (std::find(known.begin(), known.end(), 0) != known.end())
        throw std::invalid_argument("assignment does not generate the group");
    AnticycChar chi;
    chi.values = std::move(values);
    chi.conductor = detail_qf::char_conductor(t, chi.values);
    return chi;
}

// All characters of the top level, built by extending along a chain of
// cyclic steps; exactly |G| characters, each with its conductor.
inline std::vector<AnticycChar> dual_group(const RingClassTower& t) {
    const RingClassGroup& g = t.levels[t.n];
    const int h = g.size();
    std::vector<int> sub = {g.identity};
    std::vector<std::vector<CycRoot>> chars(1, std::vector<CycRoot>(h));
    std::vector<char> in_sub(h, 0);
    in_sub[g.identity] = 1;
    while (static_cast<int>(sub.size()) < h) {
        int gen = -1;
        for (int i = 0; i < h; ++i)
            if (!in_sub[i]) {
                gen = i;
                break;
            }
        long long k = 1;
        int pw = gen;
        while (!in_sub[pw]) {
            pw = g.mul(pw, gen);
            ++k;
        }
        // pw = gen^k is the first power landing in the current subgroup
        std::vector<int> new_sub;
        std::vector<std::vector<CycRoot>> new_chars;
        for (const auto& chi : chars) {
            CycRoot base = chi[pw];
            for (long long r = 0; r < k; ++r) {
                CycRoot zeta(base.num + base.den * r, base.den * k);
                std::vector<CycRoot> ext(h);
                int gp = g.identity;
                for (long long j = 0; j < k; ++j) {
                    for (int s : sub) ext[g.mul(gp, s)] = zeta.pow(j) * chi[s];
                    gp = g.mul(gp, gen);
                }
                new_chars.push_back(std::move(ext));
            }
        }
        new_sub.reserve(sub.size() * k);
        {
            int gp = g.identity;
            for (long long j = 0; j < k; ++j) {
                for (int s : sub) {
                    int e = g.mul(gp, s);
                    new_sub.push_back(e);
                    in_sub[e] = 1;
                }
                gp = g.mul(gp, gen);
            }
        }
        sub = std::move(new_sub);
        chars = std::move(new_chars);
    }
    std::vector<AnticycChar> out;
    out.reserve(chars.size());
    for (auto& v : chars) {
        AnticycChar chi;
        chi.values = std::move(v);
        chi.conductor = detail_qf::char_conductor(t, chi.values);
        out.push_back(std::move(chi));
    }
    return out;
}

} // namespace gsp4
