#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace majority {

// Exact arithmetic mode. Weights are ratios of powers of (d+1)/(d-1) times
// small fractions, whose numerators outgrow 64 bits within a few dozen
// hops, so this has to be arbitrary precision.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Uniform construction and conversion points so energy code can be written
// once and instantiated for double and Rational.
template <class S>
struct scalar_ops;

template <>
struct scalar_ops<double> {
    static double ratio(long long num, long long den) { return double(num) / double(den); }
    static double to_double(double x) { return x; }
    static double abs(double x) { return x < 0 ? -x : x; }
};

template <>
struct scalar_ops<Rational> {
    static Rational ratio(long long num, long long den) { return Rational(num, den); }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
};

inline std::string rational_numerator(const Rational& x) {
    return boost::multiprecision::numerator(x).str();
}

inline std::string rational_denominator(const Rational& x) {
    return boost::multiprecision::denominator(x).str();
}

}  // namespace majority
