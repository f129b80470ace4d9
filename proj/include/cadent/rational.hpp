#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace cadent {

/// Exact rational arithmetic for interval endpoints and slopes.
using Rational = boost::rational<std::int64_t>;

/// Largest integer <= x.
inline std::int64_t rational_floor(const Rational& x) {
    const std::int64_t n = x.numerator();
    const std::int64_t d = x.denominator();  // boost keeps d > 0
    std::int64_t q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

/// Smallest integer >= x.
inline std::int64_t rational_ceil(const Rational& x) { return -rational_floor(-x); }

inline double to_double(const Rational& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

inline std::string to_string(const Rational& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

}  // namespace cadent
