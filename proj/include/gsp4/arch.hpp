#pragma once

#include <stdexcept>

#include <Eigen/Core>
#include <Eigen/LU>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace gsp4 {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using ArchMatrix = Eigen::Matrix<Float50, 2, 2>;

// Holomorphic discrete series of scalar weight kappa, with a positive
// definite symmetric matrix S indexing the Bessel functional.
struct ArchDatum {
    int kappa = 2;
    ArchMatrix S = ArchMatrix::Identity();

    void validate() const {
        if (kappa < 1) throw std::domain_error("weight must be positive");
        if (S(0, 1) != S(1, 0))
            throw std::domain_error("matrix must be symmetric");
        if (!(S(0, 0) > 0) || !(S.determinant() > 0))
            throw std::domain_error("matrix must be positive definite");
    }
};

namespace detail_arch {

inline const Float50& pi() {
    static const Float50 value = acos(Float50(-1));
    return value;
}

// Gamma(n) for integer n >= 1.
inline Float50 gamma_int(int n) {
    Float50 out = 1;
    for (int k = 2; k < n; ++k) out *= k;
    return out;
}

// Gamma(n - 1/2) for integer n >= 1.
inline Float50 gamma_half(int n) {
    Float50 out = sqrt(pi());
    for (int k = 1; k < n; ++k) out *= Float50(2 * k - 1) / 2;
    return out;
}

}  // namespace detail_arch

// Closed value of the normalized square of the Bessel functional on the
// lowest-weight line.
inline Float50 arch_bessel_ratio(const ArchDatum& d) {
    d.validate();
    const Float50& pi = detail_arch::pi();
    const Float50 det = d.S.determinant();
    const Float50 tr = d.S.trace();
    return pow(Float50(2), 4 * d.kappa - 2) * pow(2 * pi, 2 * d.kappa - 1) *
           pow(det, Float50(2 * d.kappa - 3) / 2) /
           detail_arch::gamma_int(2 * d.kappa - 1) * exp(-4 * pi * tr);
}

// The same quantity assembled from the two degenerate Whittaker values that
// the unfolding produces: the plane-wave value on the lowest-weight vector
// and the value of the confluent integral on the conjugate line.
inline Float50 arch_bessel_assembly(const ArchDatum& d) {
    d.validate();
    const Float50& pi = detail_arch::pi();
    const Float50 det = d.S.determinant();
    const Float50 tr = d.S.trace();
    const Float50 sign = (d.kappa % 2 == 0) ? 1 : -1;
    const Float50 plane = 2 * exp(-2 * pi * tr);
    const Float50 conjugate =
        sign * 4 * pow(pi, Float50(4 * d.kappa - 1) / 2) *
        pow(4 * det, Float50(2 * d.kappa - 3) / 2) /
        (detail_arch::gamma_int(d.kappa) * detail_arch::gamma_half(d.kappa)) *
        exp(-2 * pi * tr);
    return sign * pow(Float50(4), d.kappa) / 2 * plane * conjugate;
}

}  // namespace gsp4
