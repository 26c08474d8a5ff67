#pragma once

#include "fusionmod/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace fusionmod {

// Exact arbitrary-precision fractions. Inner products divide by the group
// order; nothing in a certification path may round.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::optional<Int> as_int(const Rational& r) {
    if (!is_integer(r)) return std::nullopt;
    const BigInt n = numerator(r);
    if (n > std::numeric_limits<Int>::max() || n < std::numeric_limits<Int>::min())
        return std::nullopt;
    return static_cast<Int>(n);
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace fusionmod
