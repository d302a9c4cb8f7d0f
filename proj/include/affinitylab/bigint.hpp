#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace affinitylab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline BigInt big_factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt big_binom(const BigInt& n, const BigInt& k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (BigInt i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

} // namespace affinitylab
