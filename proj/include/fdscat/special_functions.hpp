#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <span>
#include <vector>

namespace fdscat
{

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

//---------------------------------------------------------------------------//
// Exact combinatorics
//---------------------------------------------------------------------------//

/// (l+s)!/(l-s)! as the product prod_{mu=1..s} [l(l+1) - mu(mu-1)].
/// The product hits a zero factor when s > l, so the result is 0 there.
Integer factorial_ratio(int l, int s);

Integer factorial(int n);

//---------------------------------------------------------------------------//
// Legendre polynomials
//---------------------------------------------------------------------------//

/// P_l(c) by the three-term recurrence. Throws DomainError for l < 0 or
/// |c| > 1 + 1e-12.
double legendre(int l, double c);

/// P_0(c) .. P_lmax(c) into `out` (size lmax + 1). No domain checks.
template <class T>
void legendre_values(int lmax, T c, std::span<T> out)
{
    out[0] = T(1);
    if (lmax == 0) return;
    out[1] = c;
    for (int n = 1; n < lmax; ++n) {
        out[n + 1] = (T(2 * n + 1) * c * out[n] - T(n) * out[n - 1]) / T(n + 1);
    }
}

/// Sum_j coeffs[j] P_j(c) by Clenshaw's recurrence.
cplx legendre_series(std::span<const cplx> coeffs, double c);

//---------------------------------------------------------------------------//
// Outgoing-wave polynomials chi_l(z) = e^{-z} sum_s c_s z^{-s}
//---------------------------------------------------------------------------//

/// The elementary form of sqrt(2z/pi) K_{l+1/2}(z) for integer l.
/// Coefficients c_s = (l+s)! / (s! (l-s)! 2^s) are kept exact.
class ChiPolynomial
{
  public:
    explicit ChiPolynomial(int l);

    int l() const noexcept { return l_; }
    const std::vector<Rational>& coeffs() const noexcept { return exact_; }
    std::span<const double> coeffs_double() const noexcept { return approx_; }

    /// chi_l(z); DomainError at z = 0.
    cplx operator()(cplx z) const;
    /// d chi_l / dz; DomainError at z = 0.
    cplx derivative(cplx z) const;

  private:
    int l_;
    std::vector<Rational> exact_;
    std::vector<double> approx_;
};

cplx chi_eval(const ChiPolynomial& poly, cplx z);

/// chi_0(z) .. chi_lmax(z). For Re z >= 0 by chi_{l+1} = chi_{l-1} + (2l+1)/z
/// chi_l, where chi_l is the dominant solution; for Re z < 0 it is not, and
/// each chi_l is summed directly from its coefficients.
std::vector<cplx> chi_values(int lmax, cplx z);

//---------------------------------------------------------------------------//
// Spherical and Riccati-Bessel functions
//---------------------------------------------------------------------------//

struct SphericalBesselPair
{
    double j = 0;  ///< j_l(x)
    double y = 0;  ///< y_l(x)
    double dj = 0; ///< j_l'(x)
    double dy = 0; ///< y_l'(x)
    bool y_overflow = false;
};

/// All orders 0..lmax at one argument, with derivatives.
struct SphericalBesselTable
{
    std::vector<double> j, y, dj, dy;
    bool y_overflow = false;
};

/// j_l by Miller's downward recurrence normalized on j_0 or j_1, y_l by the
/// upward recurrence. DomainError for x <= 0.
SphericalBesselPair spherical_bessel_pair(int l, double x);
SphericalBesselTable spherical_bessel_table(int lmax, double x);

/// j_0 .. j_lmax at complex z (z != 0), same downward scheme.
std::vector<cplx> spherical_bessel_j(int lmax, cplx z);

/// psi_l(x) = x j_l(x). DomainError for x <= 0.
double riccati_bessel_psi(int l, double x);
/// Complex-argument continuation, z != 0.
cplx riccati_bessel_psi(int l, cplx z);

//---------------------------------------------------------------------------//
// Finite-R Wronskian factors
//---------------------------------------------------------------------------//

/// A_n(l, j) of the closed-form Wronskian integral. DomainError unless
/// 0 <= n <= l + j and l, j >= 0.
Rational a_coefficient(int n, int l, int j);

/// Coefficients b_m of W_lj = sum_m b_m u^m with u = 1/(-2i kR):
/// b_0 = 1, b_m = Delta_jl A_{m-1}(l,j) / m for m = 1..l+j+1.
std::vector<Rational> wronskian_series(int l, int j);

struct WronskianFactor
{
    int l = 0;
    int j = 0;
    double kR = 0;
    cplx value;
};

/// (chi_l(ikR) <-> d_R chi_j(-ikR)) / (2ik), summed exactly.
WronskianFactor wronskian_factor_exact(int l, int j, double kR);

/// Same series truncated after u^order; order = 0 gives 1.
WronskianFactor wronskian_factor_truncated(int l, int j, double kR, int order);

namespace detail
{
/// Memoized wronskian_series(l, j). Thread-safe; references stay valid.
const std::vector<Rational>& wronskian_series_cached(int l, int j);

/// (j+s)!/((j-s)! s!) as double; 0 for j < s.
double expansion_weight(int j, int s);
} // namespace detail

} // namespace fdscat
