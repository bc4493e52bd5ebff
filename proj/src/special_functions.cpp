#include "fdscat/special_functions.hpp"

#include "fdscat/error.hpp"
#include "fdscat/wide_float.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace fdscat
{

Integer factorial_ratio(int l, int s)
{
    Integer p = 1;
    const long long ll = static_cast<long long>(l) * (l + 1);
    for (long long mu = 1; mu <= s; ++mu) {
        p *= Integer(ll - mu * (mu - 1));
    }
    return p;
}

Integer factorial(int n)
{
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

//---------------------------------------------------------------------------//

double legendre(int l, double c)
{
    if (l < 0) throw DomainError("legendre: negative degree " + std::to_string(l));
    if (!(std::abs(c) <= 1.0 + 1e-12)) throw DomainError("legendre: |c| > 1");
    double pm1 = 1.0;
    if (l == 0) return pm1;
    double p = c;
    for (int n = 1; n < l; ++n) {
        const double next = ((2 * n + 1) * c * p - n * pm1) / (n + 1);
        pm1 = p;
        p = next;
    }
    return p;
}

cplx legendre_series(std::span<const cplx> coeffs, double c)
{
    // P_{n+1} = alpha_n P_n + beta_n P_{n-1}, alpha_n = (2n+1)c/(n+1), beta_n = -n/(n+1)
    const int n = static_cast<int>(coeffs.size());
    if (n == 0) return 0.0;
    // accumulated in long double so f(c) comes out correctly rounded in practice
    using ld = long double;
    const ld x = c;
    ld r1 = 0, i1 = 0, r2 = 0, i2 = 0;
    for (int k = n - 1; k >= 1; --k) {
        const ld alpha = (2.0L * k + 1.0L) * x / (k + 1.0L);
        const ld beta = -(k + 1.0L) / (k + 2.0L);
        const ld r0 = coeffs[k].real() + alpha * r1 + beta * r2;
        const ld i0 = coeffs[k].imag() + alpha * i1 + beta * i2;
        r2 = r1;
        i2 = i1;
        r1 = r0;
        i1 = i0;
    }
    return {static_cast<double>(coeffs[0].real() + x * r1 - 0.5L * r2),
            static_cast<double>(coeffs[0].imag() + x * i1 - 0.5L * i2)};
}

//---------------------------------------------------------------------------//

ChiPolynomial::ChiPolynomial(int l) : l_(l)
{
    if (l < 0) throw DomainError("ChiPolynomial: negative l");
    exact_.reserve(l + 1);
    approx_.reserve(l + 1);
    Integer s_fact = 1;
    Integer two_s = 1;
    for (int s = 0; s <= l; ++s) {
        if (s > 0) {
            s_fact *= s;
            two_s *= 2;
        }
        exact_.emplace_back(factorial_ratio(l, s), s_fact * two_s);
        approx_.push_back(static_cast<double>(exact_.back()));
    }
}

cplx ChiPolynomial::operator()(cplx z) const
{
    if (z == cplx(0.0)) throw DomainError("chi_l: pole at z = 0");
    const cplx w = 1.0 / z;
    cplx sum = 0.0;
    for (int s = l_; s >= 0; --s) sum = sum * w + approx_[s];
    return std::exp(-z) * sum;
}

cplx ChiPolynomial::derivative(cplx z) const
{
    if (z == cplx(0.0)) throw DomainError("chi_l': pole at z = 0");
    // d/dz [e^{-z} p(w)] = e^{-z} [-p(w) - w^2 p'(w)],  w = 1/z
    const cplx w = 1.0 / z;
    cplx p = 0.0, dp = 0.0;
    for (int s = l_; s >= 0; --s) {
        dp = dp * w + p;
        p = p * w + approx_[s];
    }
    return std::exp(-z) * (-p - w * w * dp);
}

cplx chi_eval(const ChiPolynomial& poly, cplx z) { return poly(z); }

namespace
{

/// sum_s c_s z^{-s} for chi_l, accumulated in T.
template <class T>
cplx chi_poly_wide(int l, cplx z)
{
    // 1/z in T
    const T zr = z.real(), zi = z.imag();
    const T den = zr * zr + zi * zi;
    const WideComplex<T> w{zr / den, -zi / den};
    WideComplex<T> sum{T(1), T(0)}, wp{T(1), T(0)};
    T c = 1;
    for (int s = 1; s <= l; ++s) {
        c *= T(static_cast<long long>(l) * (l + 1) - static_cast<long long>(s) * (s - 1)) / T(2 * s);
        wp = wp * w;
        sum += wp.scaled(c);
    }
    return {static_cast<double>(sum.re), static_cast<double>(sum.im)};
}

} // namespace

std::vector<cplx> chi_values(int lmax, cplx z)
{
    if (lmax < 0) throw DomainError("chi_values: negative l");
    if (z == cplx(0.0)) throw DomainError("chi_l: pole at z = 0");
    std::vector<cplx> out(lmax + 1);
    const cplx e = std::exp(-z);
    if (z.real() < 0.0) {
        // chi_l is not dominant here and the coefficient sum cancels by up to
        // e^{2|Re z|}: sum in software floats, widening until two widths agree
        for (int l = 0; l <= lmax; ++l) {
            const cplx p50 = chi_poly_wide<Wide<50>>(l, z);
            const cplx p100 = chi_poly_wide<Wide<100>>(l, z);
            cplx p = p100;
            if (std::abs(p100 - p50) > 1e-17 * std::abs(p100)) p = chi_poly_wide<Wide<200>>(l, z);
            out[l] = e * p;
        }
        return out;
    }
    out[0] = e;
    if (lmax >= 1) out[1] = e * (1.0 + 1.0 / z);
    for (int l = 1; l < lmax; ++l) out[l + 1] = out[l - 1] + (2.0 * l + 1.0) / z * out[l];
    return out;
}

//---------------------------------------------------------------------------//

namespace
{

// Miller start index. The fixed l + 20 + |x| start loses digits for |x| >~ 30,
// so a cube-root margin is added on top.
int miller_start(int lmax, double ax)
{
    return lmax + 20 + static_cast<int>(std::ceil(ax)) + static_cast<int>(std::ceil(10.0 * std::cbrt(ax)));
}

template <class T>
std::vector<T> miller_j(int lmax, T z)
{
    using std::abs;
    const double az = abs(z);
    const int start = miller_start(lmax, az);
    std::vector<T> out(lmax + 1);
    T fp1 = 0.0;
    T f = 1e-30;
    for (int n = start; n >= 1; --n) {
        // f_{n-1} = (2n+1)/z f_n - f_{n+1}
        const T fm1 = T(2.0 * n + 1.0) / z * f - fp1;
        fp1 = f;
        f = fm1;
        if (n - 1 <= lmax) out[n - 1] = f;
        if (abs(f) > 1e200) {
            const double scale = 1e-200;
            f *= scale;
            fp1 *= scale;
            for (int m = std::max(n - 1, 0); m <= lmax; ++m) out[m] *= scale;
        }
    }
    // f = f_0, fp1 = f_1 (unnormalized)
    const T j0 = std::sin(z) / z;
    const T j1 = std::sin(z) / (z * z) - std::cos(z) / z;
    const T norm = abs(j0) >= abs(j1) ? j0 / f : j1 / fp1;
    for (auto& v : out) v *= norm;
    return out;
}

} // namespace

SphericalBesselTable spherical_bessel_table(int lmax, double x)
{
    if (lmax < 0) throw DomainError("spherical_bessel: negative l");
    if (!(x > 0.0)) throw DomainError("spherical_bessel: x must be positive");
    SphericalBesselTable t;
    const auto jj = miller_j<double>(lmax + 1, x);
    t.j.assign(jj.begin(), jj.begin() + lmax + 1);

    std::vector<double> yy(lmax + 2);
    yy[0] = -std::cos(x) / x;
    yy[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
    for (int n = 1; n <= lmax; ++n) {
        yy[n + 1] = (2.0 * n + 1.0) / x * yy[n] - yy[n - 1];
    }
    t.y.assign(yy.begin(), yy.begin() + lmax + 1);
    t.dj.resize(lmax + 1);
    t.dy.resize(lmax + 1);
    for (int n = 0; n <= lmax; ++n) {
        // f_n' = (n/x) f_n - f_{n+1}
        t.dj[n] = n / x * jj[n] - jj[n + 1];
        t.dy[n] = n / x * yy[n] - yy[n + 1];
    }
    for (double v : yy) {
        if (!std::isfinite(v)) t.y_overflow = true;
    }
    return t;
}

SphericalBesselPair spherical_bessel_pair(int l, double x)
{
    const auto t = spherical_bessel_table(l, x);
    return {t.j[l], t.y[l], t.dj[l], t.dy[l], t.y_overflow};
}

std::vector<cplx> spherical_bessel_j(int lmax, cplx z)
{
    if (lmax < 0) throw DomainError("spherical_bessel_j: negative l");
    if (z == cplx(0.0)) throw DomainError("spherical_bessel_j: z = 0");
    return miller_j<cplx>(lmax, z);
}

double riccati_bessel_psi(int l, double x)
{
    if (!(x > 0.0)) throw DomainError("riccati_bessel_psi: x must be positive");
    return x * miller_j<double>(l, x)[l];
}

cplx riccati_bessel_psi(int l, cplx z)
{
    if (l < 0) throw DomainError("riccati_bessel_psi: negative l");
    if (z == cplx(0.0)) throw DomainError("riccati_bessel_psi: z = 0");
    return z * miller_j<cplx>(l, z)[l];
}

//---------------------------------------------------------------------------//

Rational a_coefficient(int n, int l, int j)
{
    if (n < 0 || l < 0 || j < 0) throw DomainError("a_coefficient: negative argument");
    if (n > l + j) throw DomainError("a_coefficient: n > l + j");
    Rational sum = 0;
    for (int s = std::max(0, n - j); s <= std::min(n, l); ++s) {
        Rational term(factorial_ratio(l, s) * factorial_ratio(j, n - s), factorial(s) * factorial(n - s));
        if (s % 2) term = -term;
        sum += term;
    }
    return sum;
}

std::vector<Rational> wronskian_series(int l, int j)
{
    if (l < 0 || j < 0) throw DomainError("wronskian_series: negative index");
    const long long delta = static_cast<long long>(j) * (j + 1) - static_cast<long long>(l) * (l + 1);
    std::vector<Rational> b;
    b.reserve(l + j + 2);
    b.emplace_back(1);
    if (delta == 0) return b;
    for (int m = 1; m <= l + j + 1; ++m) {
        b.push_back(Rational(delta) * a_coefficient(m - 1, l, j) / m);
    }
    return b;
}

namespace
{

cplx eval_wronskian(const std::vector<Rational>& b, double kR, int terms)
{
    // u = 1/(-2i kR) = i/(2kR)
    const cplx u(0.0, 0.5 / kR);
    const int top = std::min<int>(terms, static_cast<int>(b.size()) - 1);
    cplx sum = 0.0;
    for (int m = top; m >= 0; --m) sum = sum * u + static_cast<double>(b[m]);
    return sum;
}

} // namespace

WronskianFactor wronskian_factor_exact(int l, int j, double kR)
{
    if (!(kR > 0.0)) throw DomainError("wronskian_factor: kR must be positive");
    const auto b = wronskian_series(l, j);
    return {l, j, kR, eval_wronskian(b, kR, static_cast<int>(b.size()) - 1)};
}

WronskianFactor wronskian_factor_truncated(int l, int j, double kR, int order)
{
    if (!(kR > 0.0)) throw DomainError("wronskian_factor: kR must be positive");
    if (order < 0) throw DomainError("wronskian_factor: negative order");
    return {l, j, kR, eval_wronskian(wronskian_series(l, j), kR, order)};
}

namespace detail
{

const std::vector<Rational>& wronskian_series_cached(int l, int j)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<Rational>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find({l, j});
    if (it == cache.end()) it = cache.emplace(std::pair{l, j}, wronskian_series(l, j)).first;
    return it->second;
}

double expansion_weight(int j, int s)
{
    if (j < s) return 0.0;
    return static_cast<double>(Rational(factorial_ratio(j, s), factorial(s)));
}

} // namespace detail

} // namespace fdscat
