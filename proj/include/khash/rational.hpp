#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace khash {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// base^exp for non-negative exp.
inline BigInt pow_big(const BigInt& base, long exp) {
    BigInt r = 1;
    for (long i = 0; i < exp; ++i) r *= base;
    return r;
}

/// Correctly rounded-to-nearest double for an arbitrary-size ratio.
/// Scales num/den so the quotient carries ~64 significant bits before
/// the final ldexp; avoids overflow for operands far beyond double range.
inline double to_double(const BigInt& num_in, const BigInt& den_in) {
    if (num_in == 0) return 0.0;
    BigInt num = num_in, den = den_in;
    bool neg = false;
    if (num < 0) { num = -num; neg = !neg; }
    if (den < 0) { den = -den; neg = !neg; }
    const long bn = static_cast<long>(boost::multiprecision::msb(num));
    const long bd = static_cast<long>(boost::multiprecision::msb(den));
    const long shift = 64 - (bn - bd);
    if (shift >= 0)
        num <<= shift;
    else
        den <<= -shift;
    const BigInt q = num / den;
    double d = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
    return neg ? -d : d;
}

inline double to_double(const Rational& r) {
    return to_double(boost::multiprecision::numerator(r),
                     boost::multiprecision::denominator(r));
}

/// Natural log of a positive big integer, exact to double precision.
inline double log_big(const BigInt& x) {
    const long b = static_cast<long>(boost::multiprecision::msb(x));
    if (b <= 52) return std::log(x.convert_to<double>());
    const long shift = b - 52;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_big(const Rational& r) {
    return log_big(boost::multiprecision::numerator(r)) -
           log_big(boost::multiprecision::denominator(r));
}

/// "num/den", or just "num" for integers.
inline std::string format_rational(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace detail {
inline std::string format_tenthousandths(long long c) {
    std::string frac = std::to_string(c % 10000);
    frac.insert(frac.begin(), 4 - frac.size(), '0');
    return std::to_string(c / 10000) + "." + frac;
}
}  // namespace detail

/// Round a non-negative value upward at the 4th decimal place and render
/// with exactly four decimals. The rational overload rounds exactly.
inline std::string format_ceil4(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r) * 10000;
    const BigInt den = boost::multiprecision::denominator(r);
    const BigInt c = (num + den - 1) / den;
    return detail::format_tenthousandths(c.convert_to<long long>());
}

inline std::string format_ceil4(double x) {
    return detail::format_tenthousandths(static_cast<long long>(std::ceil(x * 10000.0)));
}

}  // namespace khash
