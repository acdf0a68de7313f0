#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace branchkit {

// Exact arithmetic everywhere: series coefficients and multiplicities are
// arbitrary-precision integers, pairings and conformal weights are rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using Deg = long long;
using LabelVec = std::vector<long long>;

inline std::string int_to_string(const Int& v) { return v.str(); }

// "p/q", or just "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& v) {
    Int num = boost::multiprecision::numerator(v);
    Int den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Int rat_floor(const Rat& v) {
    Int num = boost::multiprecision::numerator(v);
    Int den = boost::multiprecision::denominator(v);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

}  // namespace branchkit
