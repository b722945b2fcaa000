#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "gsp4/quadfield.hpp"

using namespace gsp4;

TEST_CASE("reduced form enumeration") {
    auto f23 = reduced_forms(-23);
    REQUIRE(f23.size() == 3);
    CHECK(f23[0] == QuadForm{1, 1, 6});
    CHECK(f23[1] == QuadForm{2, -1, 3});
    CHECK(f23[2] == QuadForm{2, 1, 3});

    auto f4 = reduced_forms(-4);
    REQUIRE(f4.size() == 1);
    CHECK(f4[0] == QuadForm{1, 0, 1});

    auto f100 = reduced_forms(-100);
    REQUIRE(f100.size() == 2);
    CHECK(f100[0] == QuadForm{1, 0, 25});
    CHECK(f100[1] == QuadForm{2, 2, 13});

    for (long long d : {-3, -4, -23, -47, -100, -147, -2999}) {
        auto forms = reduced_forms(d);
        CHECK(count_reduced_forms(d) == static_cast<long long>(forms.size()));
        for (const auto& f : forms) {
            CHECK(is_reduced(f));
            CHECK(f.disc() == d);
            CHECK(std::gcd(std::gcd(f.a, f.b), f.c) == 1);
        }
    }

    CHECK_THROWS_AS(reduced_forms(5), std::invalid_argument);
    CHECK_THROWS_AS(reduced_forms(-5), std::invalid_argument);
    CHECK_THROWS_AS(reduced_forms(-2), std::invalid_argument);
}

TEST_CASE("composition is a finite abelian group") {
    auto g23 = class_group(-23);
    REQUIRE(g23.size() == 3);
    int gen = g23.index_of(QuadForm{2, 1, 3});
    CHECK(g23.mul(gen, gen) == g23.index_of(QuadForm{2, -1, 3}));
    CHECK(g23.pow(gen, 3) == g23.identity);
    CHECK(g23.element_order(gen) == 3);
    CHECK(compose(QuadForm{2, 1, 3}, QuadForm{2, -1, 3}) == principal_form(-23));

    auto g4 = class_group(-4);
    CHECK(g4.size() == 1);
    CHECK(g4.elements[0] == QuadForm{1, 0, 1});

    auto g47 = class_group(-47);
    REQUIRE(g47.size() == 5);
    for (int i = 0; i < g47.size(); ++i) {
        if (i != g47.identity) CHECK(g47.element_order(i) == 5);
        for (int j = 0; j < g47.size(); ++j) CHECK(g47.mul(i, j) == g47.mul(j, i));
    }

    // form inverses agree with the table inverse
    auto g84 = class_group(-84); // (Z/2)^2
    REQUIRE(g84.size() == 4);
    for (int i = 0; i < g84.size(); ++i) {
        CHECK(g84.inv(i) == g84.index_of(form_inverse(g84.elements[i])));
        CHECK(g84.mul(i, i) == g84.identity);
    }

    CHECK(form_pow(QuadForm{2, 1, 3}, -1) == QuadForm{2, -1, 3});
    CHECK(form_pow(QuadForm{2, 1, 3}, 2) == QuadForm{2, -1, 3});

    CHECK_THROWS_AS(class_group(12), std::invalid_argument);
    CHECK_THROWS_AS(compose(QuadForm{1, 1, 6}, QuadForm{1, 0, 1}), std::invalid_argument);
}

TEST_CASE("order class numbers by formula and enumeration") {
    CHECK(ring_class_number(4, 5, 1) == 2);
    CHECK(ring_class_number(3, 7, 1) == 2);
    CHECK(ring_class_number(23, 5, 0) == 3);
    CHECK(ring_class_number(3, 2, 1) == 1);
    CHECK(ring_class_number(3, 2, 2) == 2);

    const long long fields[] = {3, 4, 7, 8, 11, 15, 20, 23, 24};
    const long long primes[] = {2, 3, 5, 7, 13};
    for (long long delta : fields) {
        long long hk = ring_class_number(delta, 2, 0);
        CHECK(hk == count_reduced_forms(-delta));
        for (long long p : primes) {
            long long prev = 0;
            for (int n = 0; n <= 3; ++n) {
                long long h = ring_class_number(delta, p, n);
                if (n >= 2) CHECK(h == prev * p);
                if (n == 1) {
                    long long unit = delta == 3 ? 3 : delta == 4 ? 2 : 1;
                    CHECK(h * unit == hk * (p - kronecker(-delta, p)));
                }
                prev = h;
            }
        }
    }

    CHECK_THROWS_AS(ring_class_number(5, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(ring_class_number(4, 5, -1), std::invalid_argument);
}

TEST_CASE("splitting types from the Kronecker symbol") {
    CHECK(splitting_type(13, 4) == SplitType::Split);
    CHECK(splitting_type(7, 4) == SplitType::Inert);
    CHECK(splitting_type(2, 4) == SplitType::Ramified);
    CHECK(splitting_type(2, 7) == SplitType::Split);
    CHECK(splitting_type(5, 23) == SplitType::Inert);
    CHECK(splitting_type(3, 24) == SplitType::Ramified);
    CHECK(splitting_type(2, 3) == SplitType::Inert);

    // consistency with the conductor formula: split primes shrink the n = 1 step
    for (long long delta : {3LL, 4LL, 7LL, 11LL}) {
        for (long long p : {2LL, 3LL, 5LL, 7LL, 13LL}) {
            int k = kronecker(-delta, p);
            SplitType s = splitting_type(p, delta);
            CHECK(((k == 1 && s == SplitType::Split) || (k == -1 && s == SplitType::Inert) ||
                   (k == 0 && s == SplitType::Ramified)));
        }
    }

    CHECK(kronecker(-4, 65) == 1);
    CHECK(kronecker(12, 35) == kronecker(3, 35));
    CHECK(kronecker(-11, 2) == -1);
}

TEST_CASE("tower projections are surjective homomorphisms") {
    struct Case {
        long long delta, p;
        int n;
    };
    const Case cases[] = {{4, 5, 1}, {3, 7, 2}, {23, 2, 2}, {11, 3, 2}, {7, 13, 1}, {8, 3, 2}};
    for (const auto& cs : cases) {
        CAPTURE(cs.delta);
        CAPTURE(cs.p);
        auto t = ring_class_tower(cs.delta, cs.p, cs.n);
        REQUIRE(static_cast<int>(t.levels.size()) == cs.n + 1);
        for (int k = 0; k < cs.n; ++k) {
            const auto& up = t.levels[k + 1];
            const auto& lo = t.levels[k];
            const auto& proj = t.down[k];
            CHECK(up.size() == ring_class_number(cs.delta, cs.p, k + 1));
            CHECK(proj[up.identity] == lo.identity);
            std::set<int> image(proj.begin(), proj.end());
            CHECK(static_cast<int>(image.size()) == lo.size());
            for (int i = 0; i < up.size(); ++i)
                for (int j = 0; j < up.size(); ++j)
                    CHECK(proj[up.mul(i, j)] == lo.mul(proj[i], proj[j]));
            // all fibers share the kernel's cardinality
            std::map<int, int> fiber;
            for (int i = 0; i < up.size(); ++i) ++fiber[proj[i]];
            for (const auto& [img, cnt] : fiber) CHECK(cnt == up.size() / lo.size());
            long long expected = (k >= 1) ? cs.p
                                          : (cs.p - kronecker(-cs.delta, cs.p)) /
                                                (cs.delta == 3 ? 3 : cs.delta == 4 ? 2 : 1);
            CHECK(up.size() / lo.size() == expected);
        }
    }

    // extending the principal class of disc -100 recovers the principal class of disc -4
    CHECK(extend_class(QuadForm{1, 0, 25}, 5) == QuadForm{1, 0, 1});
    CHECK_THROWS_AS(extend_class(QuadForm{1, 0, 25}, 3), std::invalid_argument);
}

TEST_CASE("characters close multiplicatively with exact conductors") {
    auto t = ring_class_tower(4, 5, 1);
    REQUIRE(t.levels[1].size() == 2);
    int nontriv = 1 - t.levels[1].identity;

    auto chi0 = anticyc_character(t, {{nontriv, CycRoot()}});
    CHECK(chi0.conductor == 0);
    CHECK(chi0.order() == 1);

    auto chi = anticyc_character(t, {{nontriv, CycRoot(1, 2)}});
    CHECK(chi(t.levels[1].identity).is_one());
    CHECK(chi(nontriv) == CycRoot(1, 2));
    CHECK(chi.conductor == 1);
    CHECK(chi.order() == 2);

    CHECK_THROWS_AS(anticyc_character(t, {{nontriv, CycRoot(1, 3)}}), std::invalid_argument);

    // a tower with nontrivial base: disc -23, kernel of level 1 -> 0 has order 3
    auto t23 = ring_class_tower(23, 2, 1);
    REQUIRE(t23.levels[0].size() == 3);
    REQUIRE(t23.levels[1].size() == 3);
    auto duals = dual_group(t23);
    REQUIRE(duals.size() == 3);
    int order_counts[2] = {0, 0};
    for (const auto& nu : duals) {
        for (int i = 0; i < t23.levels[1].size(); ++i)
            for (int j = 0; j < t23.levels[1].size(); ++j)
                CHECK(nu(t23.levels[1].mul(i, j)) == nu(i) * nu(j));
        CHECK(nu.conductor == 0); // the projection is an isomorphism here
        ++order_counts[nu.order() == 1 ? 0 : 1];
    }
    CHECK(order_counts[0] == 1);
    CHECK(order_counts[1] == 2);

    // disc -3 * 7^4 tower: level 2 group has order 14
    auto t3 = ring_class_tower(3, 7, 2);
    REQUIRE(t3.levels[2].size() == 14);
    auto duals3 = dual_group(t3);
    REQUIRE(duals3.size() == 14);
    std::map<long long, int> by_order;
    std::map<int, int> by_conductor;
    for (const auto& nu : duals3) {
        ++by_order[nu.order()];
        ++by_conductor[nu.conductor];
        for (int i = 0; i < 14; ++i)
            for (int j = 0; j < 14; ++j)
                CHECK(nu(t3.levels[2].mul(i, j)) == nu(i) * nu(j));
    }
    CHECK(by_order[1] == 1);
    CHECK(by_order[2] == 1);
    CHECK(by_order[7] == 6);
    CHECK(by_order[14] == 6);
    CHECK(by_conductor[0] == 1);
    // characters of full order 7 or 14 see the level-2 kernel
    CHECK(by_conductor[2] == 12);

    // pullback along the projection keeps values and lowers the level
    const auto& proj = t3.down[1];
    auto duals_lo = dual_group(ring_class_tower(3, 7, 1));
    REQUIRE(duals_lo.size() == 2);
    for (const auto& lo : duals_lo) {
        std::map<int, CycRoot> assign;
        for (int i = 0; i < 14; ++i) assign[i] = lo(proj[i]);
        auto lifted = anticyc_character(t3, assign);
        CHECK(lifted.conductor == lo.conductor);
        for (int i = 0; i < 14; ++i) CHECK(lifted(i) == lo(proj[i]));
    }

    // exact root arithmetic
    CHECK(CycRoot(3, 6) == CycRoot(1, 2));
    CHECK((CycRoot(1, 3) * CycRoot(1, 3) * CycRoot(1, 3)).is_one());
    CHECK(CycRoot(2, 7).pow(-1) == CycRoot(5, 7));
    CHECK(CycRoot(1, 4).inverse() == CycRoot(3, 4));
    CHECK(CycRoot(5, 10).order() == 2);
    CHECK_THROWS_AS(CycRoot(1, 0), std::invalid_argument);
}
