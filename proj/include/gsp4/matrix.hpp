#pragma once

#include "gsp4/ratfunc.hpp"

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<gsp4::RatFunc> {
    using Real = gsp4::RatFunc;
    using NonInteger = gsp4::RatFunc;
    using Literal = gsp4::RatFunc;
    using Nested = gsp4::RatFunc;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 64,
        MulCost = 64
    };
    static inline Real epsilon() { return gsp4::RatFunc(0); }
    static inline Real dummy_precision() { return gsp4::RatFunc(0); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace gsp4 {

using HeckeMatrix = Eigen::Matrix<RatFunc, 8, 8>;
using IwahoriVector = Eigen::Matrix<RatFunc, 8, 1>;

template <typename Derived>
typename Derived::PlainObject central_reduce(const Eigen::MatrixBase<Derived>& m) {
    typename Derived::PlainObject r = m;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j)
            r(i, j) = central_reduce(r(i, j));
    return r;
}

template <typename Derived, typename Other>
bool matrices_equal(const Eigen::MatrixBase<Derived>& x,
                    const Eigen::MatrixBase<Other>& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            if (x(i, j) != y(i, j)) return false;
    return true;
}

inline HeckeMatrix hecke_zero() {
    HeckeMatrix m;
    m.setConstant(RatFunc(0));
    return m;
}

inline HeckeMatrix hecke_identity() {
    HeckeMatrix m = hecke_zero();
    for (int i = 0; i < 8; ++i) m(i, i) = RatFunc(1);
    return m;
}

} // namespace gsp4
