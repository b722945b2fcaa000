#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace gsp4 {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    if (x == 0) {
        if (e < 0) throw std::domain_error("division by zero in coefficient field");
        return Rat(0);
    }
    Rat base = x;
    long n = e;
    if (n < 0) {
        base = Rat(denominator(x), numerator(x));
        n = -n;
    }
    Rat acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline std::string rat_str(const Rat& x) {
    return x.str();
}

} // namespace gsp4
