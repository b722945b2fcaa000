#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gsp4/lfactors.hpp"
#include "gsp4/ratfunc.hpp"

namespace gsp4 {

// ---------------------------------------------------------------------------
// Twisted Steinberg components over a split quadratic extension.
//
// `eps` is the sign carried by the special representation, `gamma` the value
// of the twisting character at the uniformizer, `delta` the value of one
// split component of the anticyclotomic character.
struct SteinbergDatum {
    int eps = 1;
    RatFunc gamma = RatFunc::symbol(SymG);
    RatFunc delta = RatFunc::symbol(SymD);

    void validate() const {
        if (eps * eps != 1)
            throw std::invalid_argument("sign must be +1 or -1");
    }
};

// Toric line integrals T'(m), m >= 0.
inline RatFunc steinberg_T(long m, const SteinbergDatum& d) {
    d.validate();
    if (m < 0) throw std::domain_error("line index must be nonnegative");
    const RatFunc e(-d.eps);
    const RatFunc base = local_L(Rat(1), e * d.delta.inverse());
    if (m == 0) return base;
    const RatFunc q = RatFunc::q();
    const RatFunc step = e * (d.delta * q).inverse();
    return (RatFunc(1) + RatFunc(d.eps) * d.delta) * step.pow(m) /
           (RatFunc(1) - q.inverse()) * base;
}

// Cell values T_{v(y)}(i, j) of the unfolded integral. Only the cells listed
// below occur; anything else is outside the support.
inline RatFunc steinberg_T(int vy, long i, long j, const SteinbergDatum& d) {
    d.validate();
    const RatFunc eps(d.eps);
    const RatFunc g = d.gamma;
    const RatFunc del = d.delta;
    const auto core = [&](long ii, long jj) {
        return eps * g.pow(-ii - jj) * RatFunc::u(-3 * (ii + jj)) *
               del.pow(jj - ii + 1) * steinberg_T(0, d);
    };
    if (vy == 0 && i >= 1 && j >= 0) return core(i, j);
    if (vy == 1 && i >= 2 && j >= 1) return core(i, j);
    if (vy == 1 && i >= 2 && j == 0)
        return g.pow(-i) * RatFunc::u(-3 * i) * del.pow(2 - i) *
               steinberg_T(1, d);
    if (vy == 1 && i == 1 && j == 0)
        return g.pow(-2) * RatFunc::q(-3) * steinberg_T(0, d);
    if (vy == 1 && i == 1 && j >= 1)
        return eps * g.pow(-j - 1) * RatFunc::u(-3 * (j + 1)) * del.pow(j) *
               steinberg_T(1, d);
    throw std::domain_error("cell outside the tabulated range");
}

enum class BesselEval { Series, Closed };

// Normalized Bessel integral of the twisted Steinberg newvector, either by
// resumming the cell decomposition or from the closed product of L-factors.
inline RatFunc bessel_steinberg(const SteinbergDatum& d, BesselEval path) {
    d.validate();
    const RatFunc q = RatFunc::q();
    const RatFunc u = RatFunc::u();
    if (path == BesselEval::Closed) {
        const RatFunc e(-d.eps);
        const KChar lam{SplitType::Split, d.delta, 0};
        return RatFunc(d.eps) * d.gamma.inverse() * u.inverse() *
               local_L_K(Rat(1, 2), d.gamma.inverse(), lam) *
               local_L(Rat(1), e * d.delta.inverse()) /
               (local_L(Rat(3, 2), e * d.gamma.inverse()) *
                local_L(Rat(1), d.gamma.pow(-2)));
    }
    const RatFunc t0 = steinberg_T(0, d);
    const RatFunc t1 = steinberg_T(1, d);
    const RatFunc eps(d.eps);
    const RatFunc x = (d.gamma * d.delta * u).inverse();
    const RatFunc y = d.delta * (d.gamma * u).inverse();
    const RatFunc edge = RatFunc(1) - q.inverse();
    const RatFunc head =
        q * (steinberg_T(0, 1, 0, d) - steinberg_T(1, 1, 0, d));
    const RatFunc i0 = sum_geometric(eps * d.delta * t0, x, 2);
    const RatFunc j0 = sum_geometric(eps * (d.gamma * u).inverse() * t0, y, 1);
    const RatFunc i1 = -edge * sum_geometric(d.delta.pow(2) * t1, x, 2);
    const RatFunc j1 =
        -edge * sum_geometric(eps * (d.gamma * u).inverse() * t1, y, 1);
    return head + edge * (i0 + j0) + i1 + j1;
}

// ---------------------------------------------------------------------------
// Paramodular newvector ratio.

// Central gamma factor of the twisted special representation against the
// inverse split component.
inline RatFunc steinberg_gamma_factor(const SteinbergDatum& d) {
    d.validate();
    const RatFunc e(-d.eps);
    return RatFunc(d.eps) * d.delta.inverse() *
           local_L(Rat(1), e * d.delta) / local_L(Rat(1), e * d.delta.inverse());
}

// Best pairing of the paramodular vector with itself, on the Whittaker model
// normalized by the local zeta factors.
inline RatFunc paramodular_pairing() {
    return RatFunc::q(-2) * local_zeta(Rat(1)).pow(2) / local_zeta(Rat(2));
}

inline RatFunc paramodular_assembly(const SteinbergDatum& d) {
    SteinbergDatum dual = d;
    dual.gamma = d.gamma.inverse();
    return steinberg_gamma_factor(d) * bessel_steinberg(d, BesselEval::Series) *
           bessel_steinberg(dual, BesselEval::Series) / paramodular_pairing();
}

inline RatFunc paramodular_closed(const SteinbergDatum& d) {
    d.validate();
    const RatFunc q = RatFunc::q();
    const KChar lam{SplitType::Split, d.delta, 0};
    return RatFunc(d.eps) * q * (RatFunc(1) + q.pow(-2)) * d.delta.inverse() *
           local_zeta(Rat(2)) * local_zeta(Rat(4)) *
           spinor_IIa_K(Rat(1, 2), d.gamma, -d.eps, lam) /
           (local_L_tau(Rat(1), SplitType::Split) *
            adjoint_IIa(Rat(1), d.gamma, -d.eps));
}

// ---------------------------------------------------------------------------
// Quaternionic (inert, division algebra) newvector ratio.

// Stabilized shell integral on the non-integral orbit, as a function of the
// complex parameter s.
inline RatFunc quaternion_alpha(const Rat& s) {
    const int minus2s = detail_lf::minus_two_s(s);
    return RatFunc::u(3 - minus2s) * local_zeta_K(s + Rat(1, 2), SplitType::Inert) /
           (local_zeta(Rat(2) * s + 1) * local_zeta(s + Rat(3, 2)));
}

// Same integral with q^{-s} replaced by a character value v; the quadratic
// extension zeta in the numerator cancels the first zeta downstairs.
inline RatFunc quaternion_alpha_value(const RatFunc& v) {
    return RatFunc::u(3) * v.inverse() / local_L(Rat(3, 2), v);
}

// Bessel value of the newvector in the twisted special representation of the
// unit group, from the shell integral at the shifted parameter.
inline RatFunc quaternion_newvector(const RatFunc& sigma, int eps_value) {
    if (eps_value * eps_value != 1)
        throw std::invalid_argument("sign must be +1 or -1");
    const RatFunc e(eps_value);
    const KChar triv{SplitType::Inert, RatFunc(1), 0};
    return RatFunc::u(3) * (e * sigma).inverse() *
           local_L_K(Rat(1, 2), e * sigma.inverse(), triv) /
           (local_L(Rat(1), sigma.pow(-2)) *
            local_L(Rat(3, 2), e * sigma.inverse()));
}

inline RatFunc quaternion_pairing() {
    return local_zeta(Rat(2)) / local_zeta(Rat(4));
}

inline RatFunc quaternion_assembly(const RatFunc& sigma, int eps_value) {
    return quaternion_newvector(sigma, eps_value) *
           quaternion_newvector(sigma.inverse(), eps_value) /
           quaternion_pairing();
}

inline RatFunc quaternion_ratio(const RatFunc& sigma, int eps_value) {
    const RatFunc q = RatFunc::q();
    const KChar triv{SplitType::Inert, RatFunc(1), 0};
    return q.pow(3) * (RatFunc(1) - q.pow(-2)) * local_zeta(Rat(2)) *
           local_zeta(Rat(4)) * spinor_IIa_K(Rat(1, 2), sigma, eps_value, triv) /
           (local_L_tau(Rat(1), SplitType::Inert) *
            adjoint_IIa(Rat(1), sigma, eps_value));
}

// ---------------------------------------------------------------------------
// Ordinary line at the interpolation prime.
//
// `alpha`, `gamma` are the values of chi_1 and sigma at the uniformizer;
// `level` is the depth n >= max(1, conductor); `minus_one_sign` is the value
// of the split component at -1, only consulted in the split case.
struct OrdinaryDatum {
    RatFunc alpha = RatFunc::symbol(SymA);
    RatFunc gamma = RatFunc::symbol(SymG);
    int level = 1;
    KChar lambda{SplitType::Split, RatFunc::symbol(SymD), 0};
    int minus_one_sign = 1;

    void validate() const {
        if (level < 1) throw std::domain_error("depth must be at least 1");
        if (level < lambda.conductor)
            throw std::domain_error("depth must be at least the conductor");
        if (minus_one_sign * minus_one_sign != 1)
            throw std::invalid_argument("sign must be +1 or -1");
        if (lambda.side == SplitType::Split && lambda.conductor == 0 &&
            minus_one_sign != 1)
            throw std::invalid_argument(
                "unramified split component is trivial at -1");
        if (lambda.side == SplitType::Ramified && lambda.conductor == 0 &&
            lambda.lambda.pow(2) != RatFunc(1))
            throw std::invalid_argument(
                "anticyclotomic value over a ramified place must be a sign");
    }
};

enum class OrdStage { Toric, BesselB, Final };

// Central spin factor of the ordinary datum over the quadratic extension.
inline RatFunc ordinary_spin_L(const OrdinaryDatum& d) {
    const RatFunc m = d.alpha * d.gamma;
    RatFunc out(1);
    for (const RatFunc& v :
         {d.gamma, m, m.inverse(), d.gamma.inverse()})
        out *= local_L_K(Rat(1, 2), v, d.lambda);
    return out;
}

// Adjoint factor at s = 1 in the coordinates (alpha, gamma) of a unitary
// central character.
inline RatFunc ordinary_adjoint(const RatFunc& alpha, const RatFunc& gamma) {
    const RatFunc g2 = gamma.pow(2);
    const std::array<RatFunc, 8> roots = {
        alpha,          alpha.inverse(), (alpha * g2).inverse(), alpha * g2,
        g2.inverse(),   g2,              alpha.pow(2) * g2,
        (alpha.pow(2) * g2).inverse()};
    RatFunc out = local_zeta(Rat(1)).pow(2);
    for (const RatFunc& v : roots) out *= local_L(Rat(1), v);
    return out;
}

// Conductor power over the two central L-factors attached to the ordinary
// line, in the coordinates of the datum.
inline RatFunc ordinary_euler(const OrdinaryDatum& d) {
    const Rat half(1, 2);
    return d.alpha.pow(d.lambda.conductor) /
           (local_L_K(half, d.alpha * d.gamma, d.lambda) *
            local_L_K(half, d.gamma.inverse(), d.lambda));
}

// Spherical pairing of the ordinary line against its intertwined dual,
// divided by the square of the normalizing L-product. Each root of that
// product cancels one adjoint root, leaving the quotients below.
inline RatFunc ordinary_pairing_constant(const RatFunc& alpha,
                                         const RatFunc& gamma) {
    const RatFunc b = (alpha * gamma.pow(2)).inverse();
    RatFunc out = local_zeta(Rat(1)).pow(3) /
                  (local_zeta(Rat(2)) * local_zeta(Rat(4)));
    for (const RatFunc& y : {alpha, b, alpha * b, alpha / b})
        out *= local_L(Rat(1), y.inverse()) / local_L(Rat(1), y);
    return out;
}

inline RatFunc ordinary_ratio(const OrdinaryDatum& d, OrdStage stage) {
    d.validate();
    const RatFunc u = RatFunc::u();
    const RatFunc m = d.alpha * d.gamma;
    const int sign =
        d.lambda.side == SplitType::Split ? d.minus_one_sign : 1;
    const RatFunc toric = RatFunc(sign) *
                          local_L_tau(Rat(1), d.lambda.side) /
                          (m.pow(d.level) * u.pow(d.level));
    switch (stage) {
        case OrdStage::Toric:
            return toric;
        case OrdStage::BesselB:
            return d.gamma.pow(d.level) * u.pow(-3 * d.level) * toric;
        case OrdStage::Final: {
            // spin factor times the squared Euler unit, with the shared
            // central roots already cancelled pairwise
            const Rat half(1, 2);
            RatFunc out = local_L_tau(Rat(1), d.lambda.side) *
                          local_zeta(Rat(2)) * local_zeta(Rat(4));
            out /= ordinary_adjoint(d.alpha, d.gamma);
            out *= local_L_K(half, m.inverse(), d.lambda);
            out *= local_L_K(half, d.gamma, d.lambda);
            out *= d.alpha.pow(2 * d.lambda.conductor - 2 * d.level) *
                   RatFunc::q(-4 * d.level);
            out /= local_L_K(half, m, d.lambda);
            out /= local_L_K(half, d.gamma.inverse(), d.lambda);
            return out;
        }
    }
    throw std::logic_error("unhandled stage");
}

// Full chain: gamma factors times the two Bessel values over the dual pair
// of characters, normalized by the spherical pairing constant; the constant
// times the squared L-product collapses to the adjoint factor.
inline RatFunc ordinary_assembly(const OrdinaryDatum& d) {
    d.validate();
    OrdinaryDatum dual = d;
    dual.lambda = d.lambda.inverse();
    RatFunc j = local_zeta(Rat(1)) *
                gamma_factor_K(d.alpha * d.gamma, d.lambda) *
                gamma_factor_K(d.gamma.inverse(), d.lambda) *
                ordinary_ratio(d, OrdStage::BesselB) *
                ordinary_ratio(dual, OrdStage::BesselB) /
                local_L_tau(Rat(1), d.lambda.side);
    j /= ordinary_adjoint(d.alpha, d.gamma);
    return j * local_zeta(Rat(2)) * local_zeta(Rat(4)) / local_zeta(Rat(1));
}

// ---------------------------------------------------------------------------
// Unramified baseline: spherical Bessel ratio in the reduced coordinates
// (alpha, gamma) of a unitary central character.
inline RatFunc unramified_ratio(const KChar& nu) {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc g = RatFunc::symbol(SymG);
    const RatFunc m = a * g;
    RatFunc out = local_zeta(Rat(2)) * local_zeta(Rat(4)) /
                  local_L_tau(Rat(1), nu.side);
    out /= ordinary_adjoint(a, g);
    for (const RatFunc& v : {g, m, m.inverse(), g.inverse()})
        out *= local_L_K(Rat(1, 2), v, nu);
    return out;
}

// ---------------------------------------------------------------------------
// Product of one-step functional-equation constants along a reduced Weyl
// word (letters 1 and 2), accumulated right to left.
inline RatFunc weyl_cocycle_product(const std::vector<int>& word,
                                    const CharTriple& chi, const KChar& nu) {
    if (word.size() > 4) throw std::invalid_argument("word is not reduced");
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (word[k] != 1 && word[k] != 2)
            throw std::invalid_argument("letters must be 1 or 2");
        if (k + 1 < word.size() && word[k] == word[k + 1])
            throw std::invalid_argument("word is not reduced");
    }
    RatFunc out(1);
    CharTriple acc = chi;
    for (std::size_t k = word.size(); k-- > 0;) {
        if (word[k] == 1) {
            out *= cocycle_s1(acc, nu);
            acc = weyl_s1(acc);
        } else {
            out *= cocycle_s2(acc, nu);
            acc = weyl_s2(acc);
        }
    }
    return out;
}

}  // namespace gsp4
