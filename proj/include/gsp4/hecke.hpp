#pragma once

#include "gsp4/matrix.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gsp4 {

// Cell basis, in this order throughout:
//   1, s1, s2, s2*s1, s1*s2*s1, s1*s2, s1*s2*s1*s2, s2*s1*s2.
// Operators act on coefficient column vectors in this basis.
inline constexpr int kCellLength[8] = {0, 1, 1, 2, 3, 2, 4, 3};

enum class HeckeGen { S1, S2, Eta, S0 };

inline HeckeMatrix hecke_s1() {
    const RatFunc q = RatFunc::q();
    const RatFunc qm1 = q - 1;
    HeckeMatrix m = hecke_zero();
    for (int base : {0, 2}) {
        m(base, base + 1) = q;
        m(base + 1, base) = RatFunc(1);
        m(base + 1, base + 1) = qm1;
    }
    for (int base : {4, 6}) {
        m(base, base) = qm1;
        m(base, base + 1) = RatFunc(1);
        m(base + 1, base) = q;
    }
    return m;
}

inline HeckeMatrix hecke_s2() {
    const RatFunc q = RatFunc::q();
    const RatFunc qm1 = q - 1;
    HeckeMatrix m = hecke_zero();
    m(0, 2) = q;
    m(1, 5) = q;
    m(2, 0) = RatFunc(1);
    m(2, 2) = qm1;
    m(3, 7) = q;
    m(4, 6) = q;
    m(5, 1) = RatFunc(1);
    m(5, 5) = qm1;
    m(6, 4) = RatFunc(1);
    m(6, 6) = qm1;
    m(7, 3) = RatFunc(1);
    m(7, 7) = qm1;
    return m;
}

namespace detail_hecke {

inline std::array<RatFunc, 8> eta_weights() {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc b = RatFunc::symbol(SymB);
    const RatFunc g = RatFunc::symbol(SymG);
    return {RatFunc::u(3) * g,          RatFunc::u(3) * g,
            RatFunc::u(1) * b * g,      RatFunc::u(1) * b * g,
            RatFunc::u(-1) * a * g,     RatFunc::u(-1) * a * g,
            RatFunc::u(-3) * a * b * g, RatFunc::u(-3) * a * b * g};
}

} // namespace detail_hecke

inline HeckeMatrix hecke_eta() {
    HeckeMatrix m = hecke_zero();
    auto w = detail_hecke::eta_weights();
    for (int r = 0; r < 8; ++r) m(r, 7 - r) = w[static_cast<size_t>(r)];
    return m;
}

inline HeckeMatrix hecke_eta_inverse() {
    HeckeMatrix m = hecke_zero();
    auto w = detail_hecke::eta_weights();
    for (int r = 0; r < 8; ++r) m(7 - r, r) = w[static_cast<size_t>(r)].inverse();
    return m;
}

// The remaining affine reflection is reached by conjugation, never entered
// by hand.
inline HeckeMatrix hecke_s0() {
    return hecke_eta() * hecke_s2() * hecke_eta_inverse();
}

inline HeckeMatrix generator_matrix(HeckeGen g) {
    switch (g) {
        case HeckeGen::S1: return hecke_s1();
        case HeckeGen::S2: return hecke_s2();
        case HeckeGen::Eta: return hecke_eta();
        case HeckeGen::S0: return hecke_s0();
    }
    throw std::invalid_argument("unknown generator");
}

inline HeckeMatrix hecke_word(std::initializer_list<HeckeGen> word) {
    HeckeMatrix m = hecke_identity();
    for (HeckeGen g : word) m = m * generator_matrix(g);
    return m;
}

inline HeckeMatrix hecke_uq() {
    return hecke_word({HeckeGen::S1, HeckeGen::S2, HeckeGen::S1, HeckeGen::S0});
}

inline HeckeMatrix hecke_up() {
    return hecke_word({HeckeGen::S2, HeckeGen::S1, HeckeGen::S2, HeckeGen::Eta});
}

inline IwahoriVector spherical_vector() {
    IwahoriVector v;
    for (int i = 0; i < 8; ++i) v(i) = RatFunc(1);
    return v;
}

// Unit vector spanning the line where both U-operators act by their ordinary
// eigenvalues.
inline IwahoriVector ordinary_line() {
    IwahoriVector v;
    for (int i = 0; i < 8; ++i) v(i) = RatFunc(i == 6 ? 1 : 0);
    return v;
}

inline IwahoriVector paramodular_vector() {
    IwahoriVector v;
    const RatFunc c = RatFunc::u(-3);
    for (int i : {0, 1, 2, 5}) v(i) = RatFunc(1);
    for (int i : {3, 4, 6, 7}) v(i) = c;
    return v;
}

inline RatFunc uq_ordinary_eigenvalue() {
    return RatFunc::q(2) / RatFunc::symbol(SymA);
}

inline RatFunc up_ordinary_eigenvalue() {
    return RatFunc::u(3) * RatFunc::symbol(SymG);
}

inline RatFunc iwahori_volume() {
    return RatFunc::q(-4) / (1 + RatFunc::q(-1));
}

template <typename D1, typename D2>
RatFunc iwahori_pairing(const Eigen::MatrixBase<D1>& x,
                        const Eigen::MatrixBase<D2>& y) {
    RatFunc s(0);
    for (int w = 0; w < 8; ++w)
        s += x(w) * y(w) * RatFunc::q(kCellLength[w]);
    return s * iwahori_volume();
}

inline HeckeMatrix shifted_by(const HeckeMatrix& m, const RatFunc& s) {
    HeckeMatrix r = m;
    for (int i = 0; i < 8; ++i) r(i, i) -= s;
    return r;
}

inline HeckeMatrix ordinary_projector() {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc b = RatFunc::symbol(SymB);
    const RatFunc g = RatFunc::symbol(SymG);
    const HeckeMatrix uq = hecke_uq();
    const HeckeMatrix up = hecke_up();
    const RatFunc scale = a / (g.pow(3) * RatFunc::u(13));
    HeckeMatrix m = shifted_by(uq, RatFunc::q(2) / b);
    m = m * shifted_by(up, RatFunc::u(3) / g);
    m = m * shifted_by(up, RatFunc::u(3) * g * a);
    m = m * shifted_by(up, RatFunc::u(3) * g * b);
    return m * scale;
}

// Scalar by which the projector sends the spherical vector onto the ordinary
// line; its inverse is the local Euler unit attached to the character.
inline RatFunc ordinary_unit_scalar() {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc b = RatFunc::symbol(SymB);
    const RatFunc g = RatFunc::symbol(SymG);
    const RatFunc qi = RatFunc::q(-1);
    return (1 - a * qi) * (1 - b * qi) * (1 - g.pow(2) * a.pow(2) * qi) *
           (1 - g.pow(-2) * qi);
}

// Partial stabilization of the spherical vector: three U-operator factors
// strip the non-ordinary spin eigenlines, one strips the complementary
// Klingen eigenvalue.
inline IwahoriVector ordinary_stabilized_vector() {
    const RatFunc a = RatFunc::symbol(SymA);
    const RatFunc b = RatFunc::symbol(SymB);
    const RatFunc g = RatFunc::symbol(SymG);
    const HeckeMatrix uq = hecke_uq();
    const HeckeMatrix up = hecke_up();
    const RatFunc scale = RatFunc::u(-15) * g.inverse() * a.pow(3);
    IwahoriVector v = spherical_vector();
    v = shifted_by(uq, RatFunc::q(2) / b) * v;
    v = shifted_by(uq, RatFunc::q(2) * b) * v;
    v = shifted_by(uq, RatFunc::q(2) * a) * v;
    v = shifted_by(up, RatFunc::u(3) * g * b) * v;
    return v * scale;
}

// Fixture grammar: one entry per line as "row col expression"; missing
// entries are zero, '#' begins a comment.
inline HeckeMatrix read_matrix_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture: " + path);
    HeckeMatrix m = hecke_zero();
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int row, col;
        if (!(ls >> row >> col)) continue;
        std::string expr;
        std::getline(ls, expr);
        m(row, col) = RatFunc::parse(expr);
    }
    return m;
}

} // namespace gsp4
