#include "admesh/nc_constants.hpp"

#include "admesh/error.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace admesh {

namespace mp = boost::multiprecision;

namespace {

using Poly = std::vector<Rational>;  // coefficient of x^k at index k

Poly times_linear(const Poly& p, const Rational& root) {
    Poly out(p.size() + 1, Rational(0));
    for (std::size_t k = 0; k < p.size(); ++k) {
        out[k + 1] += p[k];
        out[k] -= root * p[k];
    }
    return out;
}

Rational power(const Rational& base, std::size_t n) {
    Rational acc(1);
    for (std::size_t i = 0; i < n; ++i) acc *= base;
    return acc;
}

Rational integrate(const Poly& p, const Rational& lo, const Rational& hi) {
    Rational acc(0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        acc += p[k] * (power(hi, k + 1) - power(lo, k + 1)) / Rational(k + 1);
    }
    return acc;
}

}  // namespace

const char* to_string(ParityCase c) noexcept {
    switch (c) {
        case ParityCase::EvenMidpoint: return "even_midpoint";
        case ParityCase::EvenGeneral: return "even_general";
        case ParityCase::OddGeneral: return "odd_general";
        case ParityCase::Euler: return "euler";
    }
    return "?";
}

std::string NcConstant::fraction() const {
    return mp::numerator(value_exact).str() + "/" + mp::denominator(value_exact).str();
}

double round_to_double(const Rational& q) {
    if (q == 0) return 0.0;
    mp::cpp_int num = mp::numerator(q);
    mp::cpp_int den = mp::denominator(q);
    const bool negative = num < 0;
    if (negative) num = -num;

    // Scale so the integer quotient has 63 or 64 bits; the remainder is folded
    // into bit 0 as a sticky bit and the uint64 -> double conversion rounds.
    const long shift = 63 - static_cast<long>(mp::msb(num)) + static_cast<long>(mp::msb(den));
    if (shift >= 0) {
        num <<= shift;
    } else {
        den <<= -shift;
    }
    mp::cpp_int quotient, remainder;
    mp::divide_qr(num, den, quotient, remainder);
    auto mantissa = static_cast<std::uint64_t>(quotient);
    if (remainder != 0) mantissa |= 1u;
    const double value = std::ldexp(static_cast<double>(mantissa), static_cast<int>(-shift));
    return negative ? -value : value;
}

bool fits_int128(const Rational& q) {
    const auto num = mp::abs(mp::numerator(q));
    const auto den = mp::denominator(q);
    return (num == 0 || mp::msb(num) < 127) && mp::msb(den) < 127;
}

NcConstant newton_cotes_constant(int r) {
    if (r < 1 || r > kMaxOrder) {
        throw Error(ErrorCode::UnsupportedOrder,
                    "order r=" + std::to_string(r) + " outside [1, " + std::to_string(kMaxOrder) + "]");
    }
    NcConstant c;
    c.r = r;
    if (r == 2) {
        c.parity_case = ParityCase::EvenMidpoint;
        c.value_exact = Rational(1, 12);
    } else if (r % 2 == 0) {
        c.parity_case = ParityCase::EvenGeneral;
        const int last = r - 2;
        Poly p{Rational(1)};
        p = times_linear(p, Rational(0));  // p0 appears squared
        for (int j = 0; j <= last; ++j) p = times_linear(p, Rational(j, last));
        c.value_exact = integrate(p, Rational(0), Rational(1));
    } else {
        c.parity_case = r == 1 ? ParityCase::Euler : ParityCase::OddGeneral;
        Poly p{Rational(1)};
        for (int j = 0; j <= r - 1; ++j) p = times_linear(p, Rational(j, r));
        c.value_exact = integrate(p, Rational(r - 1, r), Rational(1));
    }
    if (!fits_int128(c.value_exact)) {
        throw Error(ErrorCode::UnsupportedOrder, "C_r does not fit 128-bit rational for r=" + std::to_string(r));
    }
    c.value_float = round_to_double(c.value_exact);
    return c;
}

}  // namespace admesh
