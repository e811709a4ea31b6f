#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace jts {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// natural log of a positive big integer
double log_big(const BigInt& x);

// log(num/den) computed after exact reduction, so enormous but nearly
// equal counts do not lose precision
double log_big_ratio(const BigInt& num, const BigInt& den);

}  // namespace jts
