#pragma once

#include "gsp4/ratfunc.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace gsp4 {

enum class SplitType { Split, Inert, Ramified };

namespace detail_lf {

// Evaluation points s are half-integers, so u^{-2s} stays in the Laurent ring.
inline int minus_two_s(const Rat& s) {
    const Rat t = Rat(-2) * s;
    if (denominator(t) != 1)
        throw std::invalid_argument("s must be a half-integer");
    return static_cast<int>(numerator(t).convert_to<long>());
}

}  // namespace detail_lf

inline RatFunc local_L(const Rat& s, const RatFunc& value) {
    return (RatFunc(1) - value * RatFunc::u(detail_lf::minus_two_s(s))).inverse();
}

struct RamifiedChar {};

inline RatFunc local_L(const Rat&, RamifiedChar) { return RatFunc(1); }

inline RatFunc local_zeta(const Rat& s) { return local_L(s, RatFunc(1)); }

// Value of the half-power of the norm character at the uniformizer.
inline RatFunc omega_half() { return RatFunc::u(-1); }

// Character of the quadratic extension attached to an anticyclotomic twist:
// `lambda` is the value at one chosen place above the prime (a sign when the
// extension is ramified, ignored when it is inert) and `conductor` is c >= 0.
struct KChar {
    SplitType side = SplitType::Split;
    RatFunc lambda = RatFunc(1);
    int conductor = 0;

    KChar inverse() const { return KChar{side, lambda.inverse(), conductor}; }
};

inline RatFunc local_L_K(const Rat& s, const RatFunc& value, const KChar& chi) {
    if (chi.conductor > 0) return RatFunc(1);
    switch (chi.side) {
        case SplitType::Split:
            return local_L(s, value * chi.lambda) *
                   local_L(s, value * chi.lambda.inverse());
        case SplitType::Inert:
            return (RatFunc(1) -
                    value.pow(2) * RatFunc::u(2 * detail_lf::minus_two_s(s)))
                .inverse();
        case SplitType::Ramified:
            return local_L(s, value * chi.lambda);
    }
    throw std::logic_error("unhandled splitting type");
}

inline RatFunc local_zeta_K(const Rat& s, SplitType side) {
    return local_L_K(s, RatFunc(1), KChar{side, RatFunc(1), 0});
}

// L-factor of the quadratic character cutting out the extension.
inline RatFunc local_L_tau(const Rat& s, SplitType side) {
    switch (side) {
        case SplitType::Split:
            return local_zeta(s);
        case SplitType::Inert:
            return local_L(s, RatFunc(-1));
        case SplitType::Ramified:
            return RatFunc(1);
    }
    throw std::logic_error("unhandled splitting type");
}

inline RatFunc gamma_factor(const Rat& s, const RatFunc& value) {
    return local_L(Rat(1) - s, value.inverse()) / local_L(s, value);
}

// Central-point gamma factor over the quadratic extension. For positive
// conductor the two L-factors collapse to 1 and only the value^{2c} power
// survives; at conductor zero this is the plain unramified quotient.
inline RatFunc gamma_factor_K(const RatFunc& value, const KChar& chi) {
    const Rat half(1, 2);
    return value.pow(2 * chi.conductor) *
           local_L_K(half, value.inverse(), chi.inverse()) /
           local_L_K(half, value, chi);
}

// Values at the uniformizer of an unramified principal-series datum
// (chi1, chi2, sigma) of the rank-two symplectic group.
struct CharTriple {
    RatFunc x1, x2, s;
};

inline CharTriple weyl_s1(const CharTriple& c) { return {c.x2, c.x1, c.s}; }

inline CharTriple weyl_s2(const CharTriple& c) {
    return {c.x1, c.x2.inverse(), c.x2 * c.s};
}

inline RatFunc cocycle_s1(const CharTriple& chi, const KChar& nu) {
    return gamma_factor_K(chi.x1 * chi.s, nu);
}

inline RatFunc cocycle_s2(const CharTriple&, const KChar&) { return RatFunc(1); }

// Product of the one-step constants along the reduced word s1 s2 s1 s2 moving
// the long toric element, accumulated right to left.
inline RatFunc cocycle_long_word(const CharTriple& chi, const KChar& nu) {
    const CharTriple c1 = weyl_s2(chi);
    const CharTriple c2 = weyl_s1(c1);
    const CharTriple c3 = weyl_s2(c2);
    return cocycle_s1(c3, nu) * cocycle_s2(c2, nu) * cocycle_s1(c1, nu) *
           cocycle_s2(chi, nu);
}

// Spin parameter values of the unramified principal series, with the symbols
// (a, b, g) standing for the values of the three characters.
inline std::array<RatFunc, 4> spin_values() {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc b = RatFunc::symbol(SymB);
    const RatFunc g = RatFunc::symbol(SymG);
    return {g, a * g, b * g, a * b * g};
}

inline RatFunc spinor_L(const Rat& s) {
    RatFunc out(1);
    for (const RatFunc& v : spin_values()) out *= local_L(s, v);
    return out;
}

inline RatFunc spinor_L_K(const Rat& s, const KChar& nu) {
    RatFunc out(1);
    for (const RatFunc& v : spin_values()) out *= local_L_K(s, v, nu);
    return out;
}

inline RatFunc adjoint_L(const Rat& s) {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc b = RatFunc::symbol(SymB);
    const std::array<RatFunc, 8> roots = {a,     a.inverse(),       b,
                                          b.inverse(), a * b,       (a * b).inverse(),
                                          a / b, b / a};
    RatFunc out = local_zeta(s).pow(2);
    for (const RatFunc& v : roots) out *= local_L(s, v);
    return out;
}

// Degree-four spin factor of a Steinberg-type component: sigma is the value
// of the twisting character and eps the sign of the special representation.
inline RatFunc spinor_IIa_K(const Rat& s, const RatFunc& sigma, int eps,
                            const KChar& nu) {
    return local_L_K(s, sigma.inverse(), nu) * local_L_K(s, sigma, nu) *
           local_L_K(s, omega_half() * RatFunc(eps), nu);
}

inline RatFunc adjoint_IIa(const Rat& s, const RatFunc& sigma, int eps) {
    const RatFunc e(eps);
    return local_zeta(s) * local_zeta(s + 1) * local_L(s, sigma.pow(-2)) *
           local_L(s, sigma.pow(2)) * local_L(s + Rat(1, 2), e * sigma) *
           local_L(s + Rat(1, 2), e * sigma.inverse());
}

// Product of four L-factors normalizing the spherical ordinary projection.
inline RatFunc d_chi(const RatFunc& x1, const RatFunc& x2, const RatFunc& sg) {
    return local_L(Rat(1), x1) * local_L(Rat(1), x2) *
           local_L(Rat(1), (x1 * sg).pow(2)) * local_L(Rat(1), sg.pow(-2));
}

inline RatFunc d_chi() {
    return d_chi(RatFunc::symbol(SymA), RatFunc::symbol(SymB),
                 RatFunc::symbol(SymG));
}

// Conductor power over the two central L-factors attached to the ordinary
// line, in the symbols of the unramified datum.
inline RatFunc e_pi_lambda(const KChar& nu) {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc g = RatFunc::symbol(SymG);
    const Rat half(1, 2);
    return a.pow(nu.conductor) /
           (local_L_K(half, a * g, nu) * local_L_K(half, g.inverse(), nu));
}

// Classical weight-kappa spin parameters (alpha, beta) with the palindromic
// companion pair q^{2k-3}/alpha, q^{2k-3}/beta.
struct SatakeGSp4 {
    RatFunc alpha;
    RatFunc beta;
    int kappa = 3;
};

inline RatFunc klingen_alpha(const SatakeGSp4& sat) {
    return RatFunc::q(2 - sat.kappa) * sat.alpha * sat.beta;
}

inline RatFunc klingen_beta(const SatakeGSp4& sat) {
    return RatFunc::q(sat.kappa - 1) * sat.alpha / sat.beta;
}

// Weight-kappa renormalization of the ordinary unramified symbols.
inline SatakeGSp4 ordinary_satake(int kappa) {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc g = RatFunc::symbol(SymG);
    return {RatFunc::u(2 * kappa - 3) * g, RatFunc::u(2 * kappa - 3) / (a * g),
            kappa};
}

// Polynomials in one auxiliary variable, coefficients in ascending order.
using XPoly = std::vector<RatFunc>;

inline XPoly xpoly_mul(const XPoly& f, const XPoly& g) {
    XPoly out(f.size() + g.size() - 1, RatFunc(0));
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
    return out;
}

inline XPoly xpoly_rescale(const XPoly& f, const RatFunc& c) {
    XPoly out = f;
    RatFunc power(1);
    for (size_t i = 1; i < out.size(); ++i) {
        power *= c;
        out[i] *= power;
    }
    return out;
}

inline RatFunc xpoly_eval(const XPoly& f, const RatFunc& x) {
    RatFunc out(0);
    for (size_t i = f.size(); i-- > 0;) out = out * x + f[i];
    return out;
}

inline XPoly hecke_quartic(const SatakeGSp4& sat) {
    const RatFunc shift = RatFunc::q(2 * sat.kappa - 3);
    const std::array<RatFunc, 4> roots = {sat.alpha, sat.beta,
                                          shift / sat.alpha, shift / sat.beta};
    XPoly out{RatFunc(1)};
    for (const RatFunc& r : roots) out = xpoly_mul(out, XPoly{RatFunc(1), -r});
    return out;
}

inline RatFunc hecke_t1(const SatakeGSp4& sat) {
    const RatFunc shift = RatFunc::q(2 * sat.kappa - 3);
    return sat.alpha + sat.beta +
           shift * (sat.alpha.inverse() + sat.beta.inverse());
}

inline RatFunc hecke_t2(const SatakeGSp4& sat) {
    const RatFunc c2 = hecke_quartic(sat)[2];
    return (c2 - (RatFunc::q(3) + RatFunc::q(1)) * RatFunc::q(2 * sat.kappa - 6)) *
           RatFunc::q(-1);
}

inline XPoly quartic_from_traces(const RatFunc& t1, const RatFunc& t2,
                                 int kappa) {
    return {RatFunc(1), -t1,
            RatFunc::q(1) * t2 +
                (RatFunc::q(3) + RatFunc::q(1)) * RatFunc::q(2 * kappa - 6),
            -RatFunc::q(2 * kappa - 3) * t1, RatFunc::q(4 * kappa - 6)};
}

// Values of the twisting character at the places over an auxiliary prime.
struct BaseChangeData {
    SplitType type = SplitType::Inert;
    RatFunc lambda1 = RatFunc(1);
    RatFunc lambda2 = RatFunc(1);
};

// nu_l is the value of the character at the rational prime below.
inline void validate_base_change(const BaseChangeData& bc, const RatFunc& nu_l) {
    bool ok = false;
    switch (bc.type) {
        case SplitType::Split:
            ok = (bc.lambda1 * bc.lambda2 == nu_l);
            break;
        case SplitType::Inert:
            ok = (bc.lambda1.pow(2) == nu_l);
            break;
        case SplitType::Ramified:
            ok = (bc.lambda1 == nu_l);
            break;
    }
    if (!ok)
        throw std::invalid_argument("lambda data inconsistent with splitting type");
}

inline XPoly base_change_quartic(const XPoly& q, const BaseChangeData& bc) {
    switch (bc.type) {
        case SplitType::Split:
            return xpoly_mul(xpoly_rescale(q, bc.lambda1),
                             xpoly_rescale(q, bc.lambda2));
        case SplitType::Inert:
            return xpoly_mul(xpoly_rescale(q, bc.lambda1),
                             xpoly_rescale(q, -bc.lambda1));
        case SplitType::Ramified:
            return xpoly_rescale(q, bc.lambda1);
    }
    throw std::logic_error("unhandled splitting type");
}

// Evaluates the base-changed Hecke polynomial at X = l^{3/2-kappa-s}. In the
// Satake normalization the result is the reciprocal of the Euler factor.
inline RatFunc base_change_eval(const SatakeGSp4& sat, const BaseChangeData& bc,
                                const Rat& s) {
    const XPoly q = base_change_quartic(hecke_quartic(sat), bc);
    const int e = 3 - 2 * sat.kappa + detail_lf::minus_two_s(s);
    return xpoly_eval(q, RatFunc::u(e));
}

// The p-adic multiplier: a Klingen eigenvalue power for positive conductor,
// and one of three displayed Euler products at conductor zero.
inline RatFunc modified_euler(const SatakeGSp4& sat, const KChar& nu) {
    if (nu.conductor > 0)
        return (RatFunc::q(sat.kappa - 1) / klingen_alpha(sat)).pow(nu.conductor);
    const RatFunc step = RatFunc::q(sat.kappa - 2);
    const auto pair_factor = [&](const RatFunc& lam) {
        return (RatFunc(1) - lam * step / sat.alpha) *
               (RatFunc(1) - lam * step / sat.beta);
    };
    switch (nu.side) {
        case SplitType::Split:
            return pair_factor(nu.lambda) * pair_factor(nu.lambda.inverse());
        case SplitType::Inert:
            return (RatFunc(1) - RatFunc::q(2 * sat.kappa - 4) / sat.alpha.pow(2)) *
                   (RatFunc(1) - RatFunc::q(2 * sat.kappa - 4) / sat.beta.pow(2));
        case SplitType::Ramified:
            return pair_factor(nu.lambda);
    }
    throw std::logic_error("unhandled splitting type");
}

}  // namespace gsp4
