#include "jts/bignum.hpp"

#include <cmath>
#include <stdexcept>

namespace jts {

double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_big: non-positive argument");
    const auto bits = boost::multiprecision::msb(x);  // index of highest set bit
    if (bits < 512) return std::log(x.convert_to<double>());
    BigInt top = x >> (bits - 64);
    return std::log(top.convert_to<double>()) +
           static_cast<double>(bits - 64) * std::log(2.0);
}

double log_big_ratio(const BigInt& num, const BigInt& den) {
    BigRat r(num, den);  // normalizes
    return log_big(boost::multiprecision::numerator(r)) -
           log_big(boost::multiprecision::denominator(r));
}

}  // namespace jts
