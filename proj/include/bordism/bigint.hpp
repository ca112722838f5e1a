#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bordism {

using BigInt = boost::multiprecision::cpp_int;

/// a / b, throwing std::logic_error if b does not divide a. Every division in
/// the closed-form counts is exact; a remainder means a formula bug.
inline BigInt exact_divide(const BigInt& a, const BigInt& b, const char* what) {
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0) {
        throw std::logic_error(std::string("inexact division in ") + what + ": " + a.str() + " / " + b.str());
    }
    return q;
}

inline BigInt factorial(unsigned k) {
    BigInt r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

}  // namespace bordism
