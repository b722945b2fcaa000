#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "gsp4/theta.hpp"

using namespace gsp4;

namespace {

RatFunc rf(long long n, long long d = 1) { return RatFunc(Rat(n, d)); }

long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

SymClassKey point_key(const CMPoint& pt) {
    return sym_class(pt.emb.s_form(), pt.emb.order_level());
}

} // namespace

TEST_CASE("base chain embeddings carry the stated conductor data") {
    for (long long delta : {3LL, 4LL, 7LL, 11LL}) {
        for (long long p : {5LL, 7LL, 13LL}) {
            if (delta % p == 0) continue;
            CMPoint pt = base_cm_point(delta, p, 1);
            for (int n = 0; n <= 2; ++n) {
                CHECK_NOTHROW(pt.emb.validate());
                CHECK(pt.emb.n == n);
                CHECK(pt.emb.s_form().disc() == -delta * pow_ll(p, 2 * n));
                if (n == 0) CHECK(pt.reduced_class() == principal_form(-delta));
                if (n < 2) pt = tower_lift(pt);
            }
        }
    }

    CHECK_THROWS_AS(base_cm_point(3, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(base_cm_point(4, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(base_cm_point(3, 5, 5), std::invalid_argument);
    // 2 is inert in Q(sqrt(-3)), so tame level 2 violates the splitting rule
    CHECK_THROWS_AS(base_cm_point(3, 5, 2), std::invalid_argument);

    // a p-scaled conductor-1 embedding is a valid order element but fails the
    // embedding invariants: its index form is imprimitive
    OptimalEmbedding bad;
    bad.delta = 4;
    bad.p = 5;
    bad.n = 1;
    bad.nplus = 1;
    bad.w = detail_cm::mat2(0, -5, 5, 0);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // trace mismatch
    OptimalEmbedding wrong = base_cm_point(3, 5, 1).emb;
    wrong.w(1, 1) += 1;
    CHECK_THROWS_AS(wrong.validate(), std::invalid_argument);

    // a point away from the fixed base chain cannot be lifted
    CMPoint chain = base_cm_point(23, 5, 1);
    CMTower t23 = cm_tower(23, 5, 0, 1);
    int away = 0;
    for (const auto& q : t23.points[0]) {
        if (gsp4::detail_cm::eq(q.emb.w, chain.emb.w)) continue;
        ++away;
        CHECK_THROWS_AS(tower_lift(q), std::invalid_argument);
    }
    CHECK(away >= 2);
}

TEST_CASE("galois translation acts simply transitively at each level") {
    for (auto [delta, p, n] : {std::array<long long, 3>{4, 5, 2},
                               std::array<long long, 3>{3, 7, 2},
                               std::array<long long, 3>{11, 5, 1},
                               std::array<long long, 3>{7, 13, 1}}) {
        CMTower t = cm_tower(delta, p, static_cast<int>(n), 1);
        for (int k = 0; k <= n; ++k) {
            const RingClassGroup& g = t.cls.levels[k];
            REQUIRE(static_cast<int>(t.points[k].size()) == g.size());
            std::set<SymClassKey> classes;
            for (const auto& q : t.points[k]) {
                CHECK_NOTHROW(q.emb.validate());
                classes.insert(point_key(q));
            }
            CHECK(static_cast<int>(classes.size()) == g.size());

            // identity translation fixes every class
            for (int i = 0; i < g.size() && i < 4; ++i) {
                CMPoint moved = galois_translate(t.points[k][i], g.elements[g.identity]);
                CHECK(point_key(moved) == point_key(t.points[k][i]));
            }

            // cocycle relation on a sample of pairs
            std::mt19937 rng(1234 + k);
            for (int trial = 0; trial < 6; ++trial) {
                int i = static_cast<int>(rng() % g.size());
                int j = static_cast<int>(rng() % g.size());
                const CMPoint& base = t.points[k][0];
                CMPoint ab = galois_translate(galois_translate(base, g.elements[i]), g.elements[j]);
                CMPoint prod = galois_translate(base, g.elements[g.mul(i, j)]);
                CHECK(point_key(ab) == point_key(prod));
            }

            // translating one fixed point through the group covers every class
            std::set<SymClassKey> orbit;
            for (int i = 0; i < g.size(); ++i)
                orbit.insert(point_key(galois_translate(t.points[k][0], g.elements[i])));
            CHECK(orbit == classes);
        }
    }

    CHECK_THROWS_AS(galois_translate(base_cm_point(3, 5, 1), QuadForm{1, 0, 1}),
                    std::invalid_argument);
}

TEST_CASE("fiber multisets over every class match the index shifts") {
    for (long long delta : {3LL, 4LL, 7LL, 11LL}) {
        for (long long p : {5LL, 7LL, 13LL}) {
            if (delta % p == 0) continue;
            CMTower t = cm_tower(delta, p, 2, 1);
            const long long level = p;
            const RingClassGroup& lo = t.cls.levels[1];
            const RingClassGroup& hi = t.cls.levels[2];
            for (int s = 0; s < lo.size(); ++s) {
                std::vector<SymClassKey> lifted;
                for (int i = 0; i < hi.size(); ++i)
                    if (t.cls.down[1][i] == s)
                        lifted.push_back(sym_class(t.points[2][i].emb.s_form(), level));
                std::vector<SymClassKey> shifted;
                QuadForm base = t.points[1][s].emb.s_form();
                for (long long x = 1; x <= p; ++x)
                    shifted.push_back(sym_class(up_shift(base, p, x), level));
                std::sort(lifted.begin(), lifted.end());
                std::sort(shifted.begin(), shifted.end());
                REQUIRE(lifted.size() == static_cast<size_t>(p));
                CHECK(lifted == shifted);
            }
        }
    }
}

TEST_CASE("fourier operators act by the stated index shifts") {
    // degree-2 shift sum: both translates of (1,1,1) fall in one stored class,
    // so the sum is twice the stored value
    FourierExpansion f;
    f.level = 2;
    f.set(QuadForm{4, 6, 3}, rf(5));
    CHECK(f.get(QuadForm{4, 2, 1}) == rf(5));
    CHECK(f.get(QuadForm{4, 10, 7}) == rf(5));
    FourierExpansion uq = fourier_uq(f, 2);
    CHECK(uq.get(QuadForm{1, 1, 1}) == f.get(QuadForm{4, 6, 3}) + f.get(QuadForm{4, 2, 1}));
    CHECK(uq.get(QuadForm{1, 1, 1}) == rf(10));
    CHECK(uq.coef.size() == 1);

    // no doubly divisible leading entry, no preimage
    FourierExpansion g;
    g.level = 2;
    g.set(QuadForm{1, 1, 1}, rf(3));
    CHECK(fourier_uq(g, 2).coef.empty());

    FourierExpansion h;
    h.level = 5;
    h.set(QuadForm{5, 5, 10}, rf(9));
    h.set(QuadForm{3, 1, 7}, rf(4));
    FourierExpansion up = fourier_up(h, 5);
    CHECK(up.get(QuadForm{1, 1, 2}) == rf(9));
    CHECK(up.coef.size() == 1);

    // the two operators commute as index maps
    std::mt19937 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        FourierExpansion r;
        r.level = 5;
        for (int i = 0; i < 12; ++i) {
            long long a = 1 + rng() % 12;
            long long b = static_cast<long long>(rng() % 17) - 8;
            long long c = 1 + rng() % 12;
            if (QuadForm{a, b, c}.disc() >= 0) continue;
            long long m = (i % 3 == 0) ? 25 : (i % 3 == 1 ? 5 : 1);
            QuadForm base{m * a, m * b, m * c};
            RatFunc v = RatFunc::u(static_cast<int>(rng() % 5) - 2) * rf(1 + rng() % 9);
            r.add(base, v);
            if (i % 2 == 0) r.add(up_shift(base, 5, 1 + rng() % 5), v + rf(1));
        }
        FourierExpansion lhs = fourier_up(fourier_uq(r, 5), 5);
        FourierExpansion rhs = fourier_uq(fourier_up(r, 5), 5);
        CHECK(lhs.same_as(rhs));
        CHECK(fourier_hecke(r, HeckeOp::UQ, 5).same_as(fourier_uq(r, 5)));
    }
}

TEST_CASE("stabilization peels the complementary eigenvalues") {
    const long long p = 2, kappa = 3;
    RatFunc A = RatFunc::symbol(SymA), B = RatFunc::symbol(SymB);
    RatFunc pw = RatFunc::u(2 * (2 * kappa - 3));
    RatFunc alpha_q = RatFunc::u(2 * (2 - kappa)) * A * B;
    RatFunc beta_q = RatFunc::u(2 * (kappa - 1)) * A * B.inverse();

    FourierExpansion zero;
    zero.level = p;
    CHECK(stabilize_form(zero, A, B, kappa, p).coef.empty());

    // coefficients geometric in alpha_P along the chain p^k(1,1,1); the shift
    // sums vanish there, so every operator acts by a scalar on safe indices
    const int len = 8;
    FourierExpansion chain;
    chain.level = p;
    long long pk = 1;
    for (int k = 0; k < len; ++k) {
        chain.set(QuadForm{pk, pk, pk}, A.pow(k));
        pk *= p;
    }
    FourierExpansion st = stabilize_form(chain, A, B, kappa, p);
    RatFunc scal = (A.pow(3) * alpha_q).inverse() * (RatFunc(0) - beta_q) *
                   (A - pw * A.inverse()) * (A - pw * B.inverse()) * (A - B);
    pk = 1;
    for (int k = 0; k <= len - 4; ++k) {
        CHECK(st.get(QuadForm{pk, pk, pk}) == scal * A.pow(k));
        pk *= p;
    }

    // scaled output stays inside the Laurent subring of the input data
    FourierExpansion shadow = expansion_scale(A.pow(3), st);
    for (const auto& [k, v] : shadow.coef) CHECK(v.second.den().is_monomial());

    // synthetic shift-eigen data built from one tower fiber system
    CMTower t = cm_tower(11, 5, 2, 1);
    std::mt19937 rng(501);
    FourierExpansion v;
    v.level = 5;
    for (const auto& q : t.points[2]) v.set(q.emb.s_form(), rf(1 + rng() % 23, 1 + rng() % 7));
    RatFunc lam = RatFunc::symbol(SymG);
    for (int s = 0; s < t.cls.levels[1].size(); ++s) {
        RatFunc fib;
        for (int i = 0; i < t.cls.levels[2].size(); ++i)
            if (t.cls.down[1][i] == s) fib = fib + v.get(t.points[2][i].emb.s_form());
        v.set(t.points[1][s].emb.s_form(), lam.inverse() * fib);
    }
    FourierExpansion uqv = fourier_uq(v, 5);
    for (int s = 0; s < t.cls.levels[1].size(); ++s) {
        QuadForm sf = t.points[1][s].emb.s_form();
        CHECK(uqv.get(sf) == lam * v.get(sf));
        CHECK(uqv.get(sf) - beta_q * v.get(sf) == (lam - beta_q) * v.get(sf));
    }
}

TEST_CASE("theta elements satisfy the quotient compatibility") {
    std::mt19937 rng(777);
    auto random_form_of_disc = [&](long long D) {
        for (int tries = 0; tries < 200; ++tries) {
            long long a = 1 + rng() % 25;
            for (long long b = -2 * a; b <= 2 * a; ++b) {
                if ((b * b - D) % (4 * a) != 0) continue;
                long long c = (b * b - D) / (4 * a);
                if (c > 0 && (rng() % 3 == 0)) return QuadForm{a, b, c};
            }
        }
        return QuadForm{1, (D % 2 == 0) ? 0 : 1, (((D % 2 == 0) ? 0 : 1) - D) / 4};
    };

    RatFunc aq = RatFunc::u(2) * RatFunc::symbol(SymA);
    int checked = 0;
    for (long long delta : {3LL, 4LL, 7LL, 11LL}) {
        for (long long p : {5LL, 7LL, 13LL}) {
            if (delta % p == 0) continue;
            CMTower t = cm_tower(delta, p, 2, 1);
            for (int trial = 0; trial < 2; ++trial) {
                FourierExpansion f;
                f.level = p;
                if (trial == 0) {
                    // delta function at a single level-2 class
                    size_t pick = rng() % t.points[2].size();
                    f.set(t.points[2][pick].emb.s_form(), rf(1 + rng() % 11));
                } else {
                    for (const auto& q : t.points[2])
                        if (rng() % 2) f.set(q.emb.s_form(), rf(1 + rng() % 19, 1 + rng() % 5));
                    for (int j = 0; j < 3; ++j)
                        f.add(random_form_of_disc(-delta * p * p * p * p), RatFunc::u(1) * rf(1 + rng() % 7));
                    f.add(random_form_of_disc(-delta * 4), rf(3));
                }
                ThetaElement push = theta_pushforward(theta_element(f, t, 2, aq), t);
                ThetaElement rhs = theta_element(fourier_uq(f, p), t, 1, aq);
                REQUIRE(push.coeff.size() == rhs.coeff.size());
                for (size_t i = 0; i < push.coeff.size(); ++i)
                    CHECK(push.coeff[i] == aq.inverse() * rhs.coeff[i]);
                ++checked;
            }
        }
    }
    CHECK(checked == 22);

    // shift-eigen coefficient data is exactly norm compatible
    for (auto [delta, p] : {std::array<long long, 2>{3, 5}, std::array<long long, 2>{4, 7}}) {
        CMTower t = cm_tower(delta, p, 2, 1);
        FourierExpansion v;
        v.level = p;
        for (const auto& q : t.points[2]) v.set(q.emb.s_form(), rf(1 + rng() % 17, 1 + rng() % 9));
        for (int s = 0; s < t.cls.levels[1].size(); ++s) {
            RatFunc fib;
            for (int i = 0; i < t.cls.levels[2].size(); ++i)
                if (t.cls.down[1][i] == s) fib = fib + v.get(t.points[2][i].emb.s_form());
            v.set(t.points[1][s].emb.s_form(), aq.inverse() * fib);
        }
        ThetaElement push = theta_pushforward(theta_element(v, t, 2, aq), t);
        CHECK(push.same_as(theta_element(v, t, 1, aq)));
    }

    // delta coefficient function hits exactly one group element
    {
        CMTower t = cm_tower(4, 5, 2, 1);
        size_t pick = 1 % t.points[2].size();
        FourierExpansion f;
        f.level = 5;
        f.set(t.points[2][pick].emb.s_form(), rf(1));
        ThetaElement th = theta_element(f, t, 2, aq);
        for (size_t i = 0; i < th.coeff.size(); ++i) {
            if (i == pick)
                CHECK(th.coeff[i] == aq.inverse().pow(2));
            else
                CHECK(th.coeff[i].is_zero());
        }

        // values assigned per coset of the squares reproduce coset-constant
        // elements; constant data is the one-coset case
        const RingClassGroup& g = t.cls.levels[2];
        std::set<int> squares;
        for (int i = 0; i < g.size(); ++i) squares.insert(g.mul(i, i));
        FourierExpansion cf;
        cf.level = 5;
        for (int i = 0; i < g.size(); ++i)
            cf.set(t.points[2][i].emb.s_form(), squares.count(i) ? rf(2) : rf(5));
        ThetaElement cth = theta_element(cf, t, 2, aq);
        for (int i = 0; i < g.size(); ++i)
            CHECK(cth.coeff[i] == aq.inverse().pow(2) * (squares.count(i) ? rf(2) : rf(5)));

        FourierExpansion wrong;
        wrong.level = 7;
        CHECK_THROWS_AS(theta_element(wrong, t, 1, aq), std::invalid_argument);
        FourierExpansion ok;
        ok.level = 5;
        CHECK_THROWS_AS(theta_element(ok, t, 3, aq), std::invalid_argument);
        ThetaElement bottom = theta_element(ok, t, 0, aq);
        CHECK_THROWS_AS(theta_pushforward(bottom, t), std::invalid_argument);
        ThetaElement zero = theta_element(ok, t, 2, aq);
        for (const auto& c : zero.coeff) CHECK(c.is_zero());
    }
}

TEST_CASE("blind census of conductor-five embeddings") {
    // enumerate integral trace-zero solutions directly and compare the class
    // census with the tower enumeration
    auto improper_key = [](const QuadForm& f, long long level) {
        SymClassKey k1 = sym_class(f, level);
        SymClassKey k2 = sym_class(QuadForm{f.a, -f.b, f.c}, level);
        return k1 < k2 ? k1 : k2;
    };

    std::set<SymClassKey> census_improper, census_proper;
    for (long long a = -40; a <= 40; ++a) {
        for (long long cc = -40; cc <= 40; ++cc) {
            if (cc == 0) continue;
            long long c = 5 * cc;
            if ((a * a + 25) % c != 0) continue;
            long long b = -(a * a + 25) / c;
            OptimalEmbedding e;
            e.delta = 4;
            e.p = 5;
            e.n = 1;
            e.nplus = 1;
            e.w = detail_cm::mat2(a, b, c, -a);
            try {
                e.validate();
            } catch (const std::invalid_argument&) {
                continue;
            }
            census_improper.insert(improper_key(e.s_form(), 5));
            census_proper.insert(sym_class(e.s_form(), 5));
        }
    }
    CHECK(static_cast<long long>(census_improper.size()) == ring_class_number(4, 5, 1));
    CHECK(census_improper.size() == 2);

    CMTower t = cm_tower(4, 5, 1, 1);
    std::set<SymClassKey> tower_improper, tower_proper;
    for (const auto& q : t.points[1]) {
        tower_improper.insert(improper_key(q.emb.s_form(), 5));
        tower_proper.insert(sym_class(q.emb.s_form(), 5));
    }
    CHECK(tower_improper == census_improper);
    for (const auto& k : tower_proper) CHECK(census_proper.count(k) == 1);
}
