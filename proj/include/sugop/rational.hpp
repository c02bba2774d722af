#ifndef SUGOP_RATIONAL_HPP
#define SUGOP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sugop {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps the invariants we need:
// always reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    return r.str();
}

inline Rational parse_rational(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: '" + s + "'");
    }
}

// Generalized binomial coefficient binom(i, k) = i(i-1)...(i-k+1)/k!
// for k >= 0 (the upper index may be any integer), and 0 for k < 0.
inline Rational gen_binomial(long long i, long long k) {
    if (k < 0) return Rational(0);
    BigInt num = 1, den = 1;
    for (long long j = 0; j < k; ++j) {
        num *= BigInt(i - j);
        den *= BigInt(j + 1);
    }
    return Rational(num, den);
}

// Rising factorial (x)_n = x(x+1)...(x+n-1).
inline Rational pochhammer(const Rational& x, long long n) {
    Rational p = 1;
    for (long long j = 0; j < n; ++j) p *= x + j;
    return p;
}

inline BigInt factorial(long long n) {
    BigInt f = 1;
    for (long long j = 2; j <= n; ++j) f *= j;
    return f;
}

} // namespace sugop

#endif
