#pragma once

#include "fdscat/special_functions.hpp"

#include <vector>

namespace fdscat
{

/// Exact e^{a z} * sum_n q_n z^{-n} with integer a and rational q_n, n possibly
/// negative. Closed under products, z-derivatives and z -> -z, which is all the
/// chi_l algebra needs.
class ExpLaurent
{
  public:
    ExpLaurent() = default;
    ExpLaurent(int exp_coeff, int min_power, std::vector<Rational> coeffs);

    /// chi_l(z) = e^{-z} sum_s c_s z^{-s}.
    static ExpLaurent chi(int l);
    static ExpLaurent constant(Rational v);

    int exp_coeff() const noexcept { return a_; }
    int min_power() const noexcept { return lo_; }
    const std::vector<Rational>& coeffs() const noexcept { return q_; }

    /// Coefficient of z^{-n} (0 outside the stored range).
    Rational coeff(int n) const;

    ExpLaurent derivative() const;
    /// f(-z)
    ExpLaurent reflect() const;
    /// z^{-p} f(z)
    ExpLaurent shift(int p) const;
    ExpLaurent trimmed() const;

    friend ExpLaurent operator*(const ExpLaurent& f, const ExpLaurent& g);
    /// Requires equal exponents unless one side is zero.
    friend ExpLaurent operator+(const ExpLaurent& f, const ExpLaurent& g);
    friend ExpLaurent operator-(const ExpLaurent& f, const ExpLaurent& g);
    friend ExpLaurent operator*(const Rational& s, const ExpLaurent& f);
    friend bool operator==(const ExpLaurent& f, const ExpLaurent& g);

    bool is_zero() const;

    cplx operator()(cplx z) const;

  private:
    int a_ = 0;
    int lo_ = 0;
    std::vector<Rational> q_;
};

/// f <-> d g = f g' - f' g
ExpLaurent wronskian(const ExpLaurent& f, const ExpLaurent& g);

} // namespace fdscat
