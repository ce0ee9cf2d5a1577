#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace admesh {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxOrder = 12;

enum class ParityCase {
    EvenMidpoint,  // r = 2
    EvenGeneral,   // r >= 4, even
    OddGeneral,    // r >= 3, odd
    Euler,         // r = 1
};

const char* to_string(ParityCase c) noexcept;

/// Remainder constant C_r of the Newton-Cotes type quadrature of order r.
struct NcConstant {
    int r = 0;
    Rational value_exact;
    double value_float = 0.0;  // value_exact rounded to nearest
    ParityCase parity_case = ParityCase::Euler;

    double magnitude() const noexcept { return value_float < 0 ? -value_float : value_float; }
    std::string fraction() const;
};

/// Exact C_r for 1 <= r <= kMaxOrder. Throws Error(UnsupportedOrder) otherwise.
///
/// Even r >= 4 integrates (x-p0)^2 (x-p1)...(x-p_{r-2}) over [0,1] with
/// p_j = j/(r-2); odd r integrates (x-p0)...(x-p_{r-1}) over [1-1/r, 1] with
/// p_j = j/r; r = 2 is the midpoint value 1/12.
NcConstant newton_cotes_constant(int r);

/// Correctly rounded (nearest, ties-to-even) conversion of a rational.
double round_to_double(const Rational& q);

/// True when numerator and denominator both fit a signed 128-bit integer.
bool fits_int128(const Rational& q);

}  // namespace admesh
