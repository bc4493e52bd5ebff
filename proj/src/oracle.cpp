#include "fdscat/oracle.hpp"

#include "fdscat/error.hpp"
#include "fdscat/exact_series.hpp"
#include "fdscat/ext_real.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace fdscat::oracle
{

namespace
{

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

/// i^n for integer n (exact).
cplx ipow(int n)
{
    switch (((n % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return I;
    case 2: return -1.0;
    default: return -I;
    }
}

OracleReport make_report(std::string name, double tol, bool relative)
{
    OracleReport r;
    r.name = std::move(name);
    r.tolerance = tol;
    r.relative = relative;
    return r;
}

/// Folds an exact yes/no comparison into a report: a mismatch is an infinite error.
void add_exact(OracleReport& r, bool equal)
{
    ++r.samples;
    if (!equal) {
        r.max_abs_err = std::numeric_limits<double>::infinity();
        r.max_rel_err = std::numeric_limits<double>::infinity();
    }
}

} // namespace

void OracleReport::add(cplx value, cplx reference)
{
    ++samples;
    const double abs_err = std::abs(value - reference);
    const double scale = std::abs(reference);
    const double rel_err = scale > 0.0 ? abs_err / scale : (abs_err == 0.0 ? 0.0 : HUGE_VAL);
    // NaN must fail, so compare with !(<=)
    if (!(abs_err <= max_abs_err)) max_abs_err = std::isnan(abs_err) ? HUGE_VAL : abs_err;
    if (!(rel_err <= max_rel_err)) max_rel_err = std::isnan(rel_err) ? HUGE_VAL : rel_err;
}

OracleReport& OracleReport::finish()
{
    pass = samples > 0 && (relative ? max_rel_err : max_abs_err) <= tolerance;
    return *this;
}

cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b, int panels, double tol)
{
    using boost::math::quadrature::gauss_kronrod;
    panels = std::max(panels, 1);
    const double width = (b - a) / panels;
    cplx sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double hi = p == panels - 1 ? b : lo + width;
        double err = 0.0;
        sum += gauss_kronrod<double, 15>::integrate(f, lo, hi, 20, tol, &err);
    }
    return sum;
}

//---------------------------------------------------------------------------//

cplx green_closed_form(double k, double R, double r, double n_dot_s)
{
    const double d = std::sqrt(std::max(0.0, R * R + r * r - 2.0 * R * r * n_dot_s));
    if (d == 0.0) throw DomainError("green: coincident points");
    return std::exp(I * (k * d)) / (4.0 * pi * d);
}

cplx green_multipole_sum(double k, double R, double r, double n_dot_s, int l_max)
{
    if (!(k > 0.0 && r > 0.0 && R > r)) throw DomainError("green multipole: need 0 < r < R and k > 0");
    const auto chi = chi_values(l_max, cplx(0.0, -k * R));
    const auto bes = spherical_bessel_table(l_max, k * r);
    std::vector<double> p(l_max + 1);
    legendre_values<double>(l_max, n_dot_s, p);
    cplx sum = 0.0;
    for (int l = l_max; l >= 0; --l) {
        const double psi = k * r * bes.j[l];
        sum += ipow(-l) * chi[l] * psi * (2.0 * l + 1.0) * p[l];
    }
    return sum / (4.0 * pi * k * R * r);
}

OracleReport green_multipole_check(double k, double R, double r, double n_dot_s, int l_max, double tol)
{
    auto rep = make_report("green_multipole", tol, true);
    rep.add(green_multipole_sum(k, R, r, n_dot_s, l_max), green_closed_form(k, R, r, n_dot_s));
    return rep.finish();
}

cplx plane_wave_multipole_sum(double k, double r, double c, int l_max)
{
    if (!(k > 0.0 && r > 0.0)) throw DomainError("plane wave multipole: need k, r > 0");
    const double x = k * r;
    const auto bes = spherical_bessel_table(l_max, x);
    std::vector<double> p(l_max + 1);
    legendre_values<double>(l_max, c, p);
    cplx sum = 0.0;
    for (int l = l_max; l >= 0; --l) sum += ipow(-l) * (x * bes.j[l]) * (2.0 * l + 1.0) * p[l];
    return sum / x;
}

OracleReport plane_wave_multipole_check(double k, double r, double c, int l_max, double tol)
{
    auto rep = make_report("plane_wave_multipole", tol, true);
    rep.add(plane_wave_multipole_sum(k, r, c, l_max), std::exp(-I * (k * r * c)));
    return rep.finish();
}

//---------------------------------------------------------------------------//

cplx lemma2_closed_form(double kr, const std::vector<double>& h)
{
    if (!(kr > 0.0)) throw DomainError("lemma2: kr must be positive");
    // G(c) = sum_m (-1)^m H^{(m)}(c) / (-ikr)^{m+1}
    const cplx a(0.0, -kr);
    auto G = [&](double c) {
        std::vector<double> d(h);
        cplx sum = 0.0;
        cplx apow = a;
        for (std::size_t m = 0; m < h.size(); ++m) {
            double hm = 0.0;
            for (std::size_t n = d.size(); n-- > 0;) hm = hm * c + d[n];
            sum += (m % 2 ? -1.0 : 1.0) * hm / apow;
            apow *= a;
            // differentiate the coefficient list
            for (std::size_t n = 0; n + 1 < d.size(); ++n) d[n] = d[n + 1] * static_cast<double>(n + 1);
            if (!d.empty()) d.pop_back();
        }
        return sum;
    };
    return G(1.0) - std::exp(cplx(0.0, 2.0 * kr)) * G(-1.0);
}

OracleReport lemma2_check(double kr, const std::vector<double>& h, double tol)
{
    auto rep = make_report("lemma2", tol, false);
    auto integrand = [&](double c) {
        double hv = 0.0;
        for (std::size_t n = h.size(); n-- > 0;) hv = hv * c + h[n];
        return std::exp(cplx(0.0, kr * (1.0 - c))) * hv;
    };
    const int panels = static_cast<int>(std::ceil(2.0 * kr / pi)) + 1;
    rep.add(lemma2_closed_form(kr, h), integrate_adaptive(integrand, -1.0, 1.0, panels, 1e-13));
    return rep.finish();
}

double legendre_shifted_sum(int l, double xi)
{
    if (l < 0) throw DomainError("legendre_shifted_sum: negative l");
    // coefficients (l+s)!/((l-s)! s!^2) (-1/2)^s, built by their ratio; the
    // alternating sum is accumulated in extended precision
    ext_real term = 1, sum = 1;
    for (int s = 1; s <= l; ++s) {
        term *= -ext_real(static_cast<double>(l) * (l + 1) - static_cast<double>(s) * (s - 1)) / ext_real(2.0 * s * s) *
                ext_real(xi);
        sum += term;
    }
    return static_cast<double>(sum);
}

OracleReport a6_check(int l, cplx z, double tol)
{
    if (!(z.real() >= 0.5)) throw DomainError("a6_check: the integral converges only for Re z > 0; need Re z >= 0.5");
    auto rep = make_report("a6_integral", tol, true);
    // cut where Re z * xi - l log(1 + xi) exceeds 40 + Re z
    double xmax = 1.0;
    while (z.real() * xmax - l * std::log1p(xmax) < 40.0 + z.real()) xmax *= 1.25;
    auto integrand = [&](double xi) { return std::exp(z * (1.0 - xi)) * legendre_shifted_sum(l, xi); };
    const int panels = static_cast<int>(std::ceil(xmax * (std::abs(z.imag()) + z.real()) / pi)) + 1;
    const cplx quad = integrate_adaptive(integrand, 0.0, xmax, panels, 1e-13);
    const cplx closed = ChiPolynomial(l)(-z) / z;
    rep.add(quad, closed);
    return rep.finish();
}

OracleReport shifted_legendre_check(int lmax, double tol)
{
    auto rep = make_report("shifted_legendre_sum", tol, false);
    for (int l = 0; l <= lmax; ++l) {
        for (int i = 0; i <= 40; ++i) {
            const double xi = 2.0 * i / 40.0;
            rep.add(legendre_shifted_sum(l, xi), legendre(l, 1.0 - xi));
        }
    }
    return rep.finish();
}

OracleReport addition_theorem_check(int l, double beta, double theta, double tol)
{
    auto rep = make_report("addition_theorem", tol, true);
    const double cb = std::cos(beta), sb = std::sin(beta), ct = std::cos(theta), st = std::sin(theta);
    auto integrand = [&](double phi) -> cplx {
        return legendre(l, std::clamp(cb * ct + sb * st * std::cos(phi), -1.0, 1.0));
    };
    const cplx quad = integrate_adaptive(integrand, 0.0, 2.0 * pi, l + 1, 1e-13);
    rep.add(quad, 2.0 * pi * legendre(l, cb) * legendre(l, ct));
    return rep.finish();
}

cplx plane_wave_flux_integral(double kR, double w_dot_s)
{
    if (!(kR > 0.0)) throw DomainError("plane_wave_flux: kR must be positive");
    const double cb = w_dot_s, sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
    const int panels = static_cast<int>(std::ceil(kR)) + 1;
    auto ring = [&](double x) {
        const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
        auto f = [&](double phi) {
            const double nw = x * cb + sx * sb * std::cos(phi);
            return std::exp(cplx(0.0, kR * (nw - x))) * (nw + x);
        };
        return integrate_adaptive(f, 0.0, 2.0 * pi, panels, 1e-13);
    };
    // (k/2) R^2 with k = 1
    return 0.5 * kR * kR * integrate_adaptive(ring, -1.0, 1.0, panels, 1e-12);
}

OracleReport plane_wave_flux_check(double kR, double w_dot_s)
{
    auto rep = make_report("plane_wave_flux", 1e-6 * kR * kR, false);
    rep.add(plane_wave_flux_integral(kR, w_dot_s), 0.0);
    return rep.finish();
}

//---------------------------------------------------------------------------//

OracleReport wronskian_direct_check(int l, int j, double kR, double tol)
{
    auto rep = make_report("wronskian_direct", tol, true);
    // (chi_l(ikR) <-> d_R chi_j(-ikR))/(2ik) = wronskian(chi_l(z), chi_j(-z))/2 at z = ikR
    const auto F = ExpLaurent::chi(l);
    const auto G = ExpLaurent::chi(j).reflect();
    const auto Q = Rational(1, 2) * wronskian(F, G);
    // W = sum_m b_m u^m with u = -1/(2z): coefficient of z^{-m} is b_m (-1/2)^m
    const auto b = wronskian_series(l, j);
    bool equal = Q.exp_coeff() == 0 || Q.is_zero();
    const int hi = std::max(Q.min_power() + static_cast<int>(Q.coeffs().size()), static_cast<int>(b.size()));
    for (int m = std::min(Q.min_power(), 0); m < hi; ++m) {
        Rational expect = 0;
        if (m >= 0 && m < static_cast<int>(b.size())) {
            expect = b[m];
            for (int t = 0; t < m; ++t) expect /= -2;
        }
        equal = equal && Q.coeff(m) == expect;
    }
    add_exact(rep, equal);
    rep.add(Q(cplx(0.0, kR)), wronskian_factor_exact(l, j, kR).value);
    return rep.finish();
}

OracleReport diagonal_wronskian_check(int jmax, const std::vector<double>& kRs, double tol)
{
    auto rep = make_report("diagonal_wronskian", tol, true);
    for (int j = 0; j <= jmax; ++j) {
        const auto F = ExpLaurent::chi(j);
        const auto W = Rational(1, 2) * wronskian(F, F.reflect());
        add_exact(rep, W == ExpLaurent::constant(1));
        for (double kR : kRs) rep.add(W(cplx(0.0, kR)), 1.0);
    }
    return rep.finish();
}

OracleReport footnote_zero_check(int jmax, const std::vector<cplx>& zs, double tol)
{
    auto rep = make_report("footnote_zero", tol, false);
    for (int j = 0; j <= jmax; ++j) {
        const auto F = ExpLaurent::chi(j);
        add_exact(rep, wronskian(F, F).is_zero());
        const ChiPolynomial chi(j);
        for (const auto& z : zs) {
            const cplx v = chi(z), dv = chi.derivative(z);
            // relative to |chi_j(z)|^2
            rep.add((v * dv - dv * v) / std::norm(v), 0.0);
        }
    }
    return rep.finish();
}

OracleReport bracket_identity_check(int jmax, const std::vector<cplx>& zs, double tol)
{
    auto rep = make_report("bracket_identity", tol, true);
    for (int j = 0; j <= jmax; ++j) {
        const auto F = ExpLaurent::chi(j);
        const auto H = F.reflect().shift(1); // chi_j(-z)/z
        // z [F H' - F' H + F H / z]
        const auto B = (wronskian(F, H) + (F * H).shift(1)).shift(-1);
        add_exact(rep, B == ExpLaurent::constant(2));
        for (const auto& z : zs) rep.add(B(z), 2.0);
    }
    return rep.finish();
}

OracleReport riccati_reconstruction_check(int lmax, const std::vector<cplx>& zs, double tol)
{
    auto rep = make_report("riccati_reconstruction", tol, true);
    for (const auto& z : zs) {
        const auto psi = spherical_bessel_j(lmax, z);
        const auto out = chi_values(lmax, -I * z);
        const auto in = chi_values(lmax, I * z);
        for (int l = 0; l <= lmax; ++l) {
            const cplx direct = z * psi[l];
            const cplx rebuilt = (ipow(-l) * out[l] - ipow(l) * in[l]) / (2.0 * I);
            const double scale = std::max({std::abs(direct), std::abs(out[l]), std::abs(in[l])});
            ++rep.samples;
            const double err = std::abs(direct - rebuilt);
            rep.max_abs_err = std::max(rep.max_abs_err, err);
            rep.max_rel_err = std::max(rep.max_rel_err, err / scale);
        }
    }
    return rep.finish();
}

OracleReport factorial_product_check(int lmax)
{
    auto rep = make_report("factorial_product", 0.0, false);
    for (int l = 0; l <= lmax; ++l) {
        for (int s = 0; s <= l; ++s) add_exact(rep, factorial_ratio(l, s) == factorial(l + s) / factorial(l - s));
    }
    return rep.finish();
}

OracleReport a1_delta_check(int lmax)
{
    auto rep = make_report("a1_equals_delta", 0.0, false);
    for (int l = 0; l <= lmax; ++l) {
        for (int j = 0; j <= lmax; ++j) {
            if (l + j < 1) continue;
            add_exact(rep, a_coefficient(1, l, j) == Rational(j * (j + 1) - l * (l + 1)));
        }
    }
    return rep.finish();
}

//---------------------------------------------------------------------------//

std::vector<OracleReport> run_default_suite()
{
    std::vector<OracleReport> out;
    auto tag = [&](OracleReport r, const std::string& detail) {
        r.name += "[" + detail + "]";
        out.push_back(std::move(r));
    };

    tag(green_multipole_check(1.0, 2.0, 1.0, 1.0, 30), "k=1,R=2,r=1,c=1");
    tag(green_multipole_check(1.0, 2.0, 1.0, 0.3, 30), "k=1,R=2,r=1,c=0.3");
    tag(green_multipole_check(2.0, 5.0, 1.5, -0.6, 40), "k=2,R=5,r=1.5,c=-0.6");

    tag(plane_wave_multipole_check(1.0, 1.0, 1.0, 25), "kr=1,c=1");
    tag(plane_wave_multipole_check(1.0, 5.0, 0.3, 40), "kr=5,c=0.3");
    tag(plane_wave_multipole_check(2.0, 10.0, -0.8, 70), "kr=20,c=-0.8");

    tag(lemma2_check(pi, {1.0}), "H=1,kr=pi");
    tag(lemma2_check(1.0, {1.0}), "H=1,kr=1");
    tag(lemma2_check(2.0, {0.0, 1.0}), "H=c,kr=2");
    tag(lemma2_check(7.5, {0.5, -1.0, 0.0, 2.0, 0.25}), "H=quartic,kr=7.5");

    tag(a6_check(0, 1.0), "l=0,z=1");
    tag(a6_check(1, 2.0), "l=1,z=2");
    tag(a6_check(4, cplx(1.5, 3.0)), "l=4,z=1.5+3i");
    tag(a6_check(8, cplx(3.0, -2.0)), "l=8,z=3-2i");
    tag(shifted_legendre_check(10, 1e-12), "l<=10");

    tag(addition_theorem_check(0, 0.7, 1.1), "l=0");
    tag(addition_theorem_check(1, 0.7, 1.1), "l=1");
    tag(addition_theorem_check(6, 0.7, 1.1), "l=6");
    tag(addition_theorem_check(12, 2.0, 0.4), "l=12");

    tag(plane_wave_flux_check(2.0, 1.0), "kR=2,c=1");
    tag(plane_wave_flux_check(2.0, 0.5), "kR=2,c=0.5");
    tag(plane_wave_flux_check(5.0, -0.3), "kR=5,c=-0.3");

    {
        auto rep = make_report("wronskian_direct", 1e-12, true);
        for (int l = 0; l <= 12; ++l) {
            for (int j = 0; j <= 12; ++j) {
                for (double kR : {2.0, 10.0}) {
                    const auto r = wronskian_direct_check(l, j, kR);
                    rep.samples += r.samples;
                    rep.max_abs_err = std::max(rep.max_abs_err, r.max_abs_err);
                    rep.max_rel_err = std::max(rep.max_rel_err, r.max_rel_err);
                }
            }
        }
        tag(rep.finish(), "l,j<=12");
    }

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> mag(0.5, 5.0), arg(-pi, pi);
    std::vector<cplx> zs;
    for (int i = 0; i < 10; ++i) zs.push_back(std::polar(mag(rng), arg(rng)));
    tag(diagonal_wronskian_check(20, {0.5, 1.0, 5.0, 50.0}), "j<=20");
    tag(footnote_zero_check(15, zs), "j<=15");
    tag(bracket_identity_check(10, zs), "j<=10");

    std::uniform_real_distribution<double> big(0.5, 50.0), half(-pi / 2, pi / 2);
    std::vector<cplx> right;
    for (int i = 0; i < 50; ++i) right.push_back(std::polar(big(rng), half(rng)));
    tag(riccati_reconstruction_check(30, right), "l<=30");
    tag(factorial_product_check(25), "l<=25");
    tag(a1_delta_check(12), "l,j<=12");
    return out;
}

} // namespace fdscat::oracle
