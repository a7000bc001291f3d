#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace exwb {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic. cpp_rational keeps values in lowest terms with a
// positive denominator, so every operation below is exact -- no rounding ever.
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p" or "p/q" (q != 0). Throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Complex number with exact rational real/imaginary parts.
struct RationalComplex {
    Rational re;
    Rational im;

    RationalComplex() = default;
    RationalComplex(Rational r) : re(std::move(r)) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RationalComplex(long r, long i = 0) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    RationalComplex conj() const { return {re, -im}; }
    Rational abs2() const { return re * re + im * im; }

    friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

}  // namespace exwb
