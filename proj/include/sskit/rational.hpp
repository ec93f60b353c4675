#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace sskit {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// 2^e for any (possibly negative) exponent.
Rat pow2(long e);

// Largest e with 2^e <= x; requires x > 0.
long floorLog2(const Rat& x);

// Smallest L >= 0 with p * 2^L >= 1, i.e. ceil(log2(1/p)); requires 0 < p <= 1.
long ceilLog2Inv(const Rat& p);

// Smallest integer r with r^n >= value; requires value >= 0, n >= 1.
BigInt nthRootCeil(const BigInt& value, unsigned n);

// Canonical "num/den" form (lowest terms, positive denominator).
std::string ratToString(const Rat& r);
// Accepts "num/den" or a bare integer.
Rat ratFromString(const std::string& s);

}  // namespace sskit
