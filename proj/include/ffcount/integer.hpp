#pragma once

#include <cstdint>
#include <numeric>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffcount {

/// Exact integer used for closed-form counts and exponent bookkeeping.
using Integer = boost::multiprecision::cpp_int;

inline Integer ipow(const Integer& base, std::uint64_t exp) {
    Integer result = 1;
    Integer b = base;
    while (exp != 0) {
        if (exp & 1U) result *= b;
        exp >>= 1U;
        if (exp != 0) b *= b;
    }
    return result;
}

inline Integer abs_gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
}

/// gcd(|e|, modulus) with gcd(0, x) = x.
inline std::uint64_t gcd_with(const Integer& e, std::uint64_t modulus) {
    if (modulus == 0) return 0;
    Integer r = boost::multiprecision::abs(e) % modulus;
    return std::gcd(r.convert_to<std::uint64_t>(), modulus);
}

inline Integer lcm_of(std::span<const std::uint64_t> values) {
    Integer acc = 1;
    for (auto v : values) {
        Integer g = boost::multiprecision::gcd(acc, Integer(v));
        acc = acc / g * v;
    }
    return acc;
}

inline Integer product_of(std::span<const std::uint64_t> values) {
    Integer acc = 1;
    for (auto v : values) acc *= v;
    return acc;
}

/// Non-negative residue of e modulo m (m > 0).
inline std::uint64_t mod_u64(const Integer& e, std::uint64_t m) {
    Integer r = e % m;
    if (r < 0) r += m;
    return r.convert_to<std::uint64_t>();
}

}  // namespace ffcount
