#pragma once

// Software floating point for the few places where double cancels away every
// digit: finite-R flux sums at small kR and chi_l(z) for Re z < 0.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace fdscat
{

template <unsigned Digits>
using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>,
                                           boost::multiprecision::et_off>;

template <class T>
struct WideComplex
{
    T re{0};
    T im{0};

    friend WideComplex operator+(const WideComplex& a, const WideComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend WideComplex operator*(const WideComplex& a, const WideComplex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    WideComplex& operator+=(const WideComplex& b)
    {
        re += b.re;
        im += b.im;
        return *this;
    }
    WideComplex scaled(const T& s) const { return {re * s, im * s}; }
    WideComplex conj() const { return {re, -im}; }
};

template <class T>
T to_wide(const boost::multiprecision::cpp_rational& q)
{
    return T(boost::multiprecision::numerator(q)) / T(boost::multiprecision::denominator(q));
}

} // namespace fdscat
