#include "fdscat/flux.hpp"

#include "fdscat/error.hpp"
#include "fdscat/wide_float.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace fdscat
{

namespace
{

namespace mp = boost::multiprecision;

constexpr double pi = std::numbers::pi;

void check_kr(double kR)
{
    if (!(kR > 0.0) || !std::isfinite(kR)) throw DomainError("kR must be positive and finite");
}

void check_grid(std::span<const double> grid)
{
    for (double c : grid) {
        if (!(std::abs(c) <= 1.0 + 1e-12)) throw DomainError("flux grid: cosine outside [-1, 1]");
    }
}

// The off-diagonal W_lj grow like (L/kR)^{2L} (about 1e28 at L = 12,
// kR = 0.5) while the angular integral must cancel them to 1e-10 of sigma, so
// the double sum runs in a software float whose width is picked from the
// largest term.
/// Decimal digits needed so the largest |b_m| (2kR)^{-m} still leaves about
/// 30 significant digits after cancellation.
int required_digits(int lmax, double kR)
{
    const double log_t = -std::log10(2.0 * kR);
    double worst = 0.0;
    for (int l = 0; l <= lmax; ++l) {
        for (int j = 0; j <= lmax; ++j) {
            const auto& b = detail::wronskian_series_cached(l, j);
            for (std::size_t m = 1; m < b.size(); ++m) {
                if (b[m] == 0) continue;
                const auto num = mp::abs(mp::numerator(b[m]));
                const auto den = mp::denominator(b[m]);
                const double lg = (static_cast<double>(mp::msb(num)) - static_cast<double>(mp::msb(den))) * 0.30103;
                worst = std::max(worst, lg + m * log_t + 1.0);
            }
        }
    }
    return static_cast<int>(std::ceil(worst)) + 32;
}

template <class F>
auto with_precision(int digits, F&& f)
{
    if (digits <= 50) return f.template operator()<Wide<50>>();
    if (digits <= 100) return f.template operator()<Wide<100>>();
    if (digits <= 200) return f.template operator()<Wide<200>>();
    if (digits <= 400) return f.template operator()<Wide<400>>();
    throw DomainError("finite-R flux: Wronskian factors exceed 1e368; kR too small for this L");
}

/// Gauss-Legendre nodes and weights polished in T from the double rule.
template <class T>
std::pair<std::vector<T>, std::vector<T>> wide_rule(int n)
{
    static std::mutex mutex;
    static std::map<int, std::pair<std::vector<T>, std::vector<T>>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    const auto seed = gauss_legendre_rule(n);
    const T tol = std::numeric_limits<T>::epsilon() * 16;
    std::vector<T> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        T xi = seed.nodes()[i];
        T dp = 1;
        for (int it = 0; it < 20; ++it) {
            // P_n and P_n' by recurrence
            T p0 = 1, p1 = xi;
            for (int m = 1; m < n; ++m) {
                const T p2 = (T(2 * m + 1) * xi * p1 - T(m) * p0) / T(m + 1);
                p0 = p1;
                p1 = p2;
            }
            const T pn = n == 0 ? T(1) : p1;
            const T pm = n == 1 ? T(1) : p0;
            dp = T(n) * (xi * pn - pm) / (xi * xi - 1);
            const T dx = pn / dp;
            xi -= dx;
            if (mp::abs(dx) < tol) break;
        }
        T p0 = 1, p1 = xi;
        for (int m = 1; m < n; ++m) {
            const T p2 = (T(2 * m + 1) * xi * p1 - T(m) * p0) / T(m + 1);
            p0 = p1;
            p1 = p2;
        }
        dp = T(n) * (xi * p1 - (n == 1 ? T(1) : p0)) / (xi * xi - 1);
        x[i] = xi;
        w[i] = T(2) / ((1 - xi * xi) * dp * dp);
    }
    if (n % 2 == 1) x[n / 2] = 0;
    return cache.emplace(n, std::pair{x, w}).first->second;
}

/// Double sum sum_{l,j} conj(a_l P_l) a_j P_j W_lj in precision T.
template <class T>
class FluxKernel
{
  public:
    FluxKernel(const PartialWaveAmplitudes& amps, double kR, int order) : n_(amps.lmax() + 1), p_(n_)
    {
        for (int j = 0; j < n_; ++j) {
            const cplx e = amps.eta()[j];
            a_.push_back({T(2 * j + 1) * T(e.real()), T(2 * j + 1) * T(e.imag())});
        }
        // u = 1/(-2ikR) = i t, t = 1/(2kR): u^m = i^m t^m
        const T t = T(1) / (T(2) * T(kR));
        w_.resize(static_cast<std::size_t>(n_) * n_);
        for (int l = 0; l < n_; ++l) {
            for (int j = 0; j < n_; ++j) {
                const auto& b = detail::wronskian_series_cached(l, j);
                int top = static_cast<int>(b.size()) - 1;
                if (order >= 0) top = std::min(top, order);
                WideComplex<T> sum;
                T tm = 1;
                for (int m = 0; m <= top; ++m) {
                    const T v = to_wide<T>(b[m]) * tm;
                    switch (m % 4) {
                    case 0: sum.re += v; break;
                    case 1: sum.im += v; break;
                    case 2: sum.re -= v; break;
                    default: sum.im -= v; break;
                    }
                    tm *= t;
                }
                w_[l * n_ + j] = sum;
            }
        }
    }

    WideComplex<T> operator()(const T& c)
    {
        legendre_values<T>(n_ - 1, c, p_);
        WideComplex<T> total;
        for (int l = 0; l < n_; ++l) {
            WideComplex<T> inner;
            for (int j = 0; j < n_; ++j) inner += (a_[j] * w_[l * n_ + j]).scaled(p_[j]);
            total += a_[l].conj().scaled(p_[l]) * inner;
        }
        return total;
    }

  private:
    int n_;
    std::vector<WideComplex<T>> a_, w_;
    std::vector<T> p_;
};

FluxResult flux_on_grid(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid, int order)
{
    check_kr(kR);
    check_grid(grid);
    FluxResult out;
    out.kR = kR;
    if (order >= 0) out.order = order;
    out.grid.reserve(grid.size());
    with_precision(required_digits(amps.lmax(), kR), [&]<class T>() {
        FluxKernel<T> kernel(amps, kR, order);
        for (double c : grid) {
            const auto s = kernel(T(c));
            out.grid.push_back({c, static_cast<double>(s.re)});
            out.imag_residual = std::max(out.imag_residual, std::abs(static_cast<double>(s.im)));
        }
        return 0;
    });
    return out;
}

double total_flux_wide(const PartialWaveAmplitudes& amps, double kR, int points)
{
    check_kr(kR);
    return with_precision(required_digits(amps.lmax(), kR), [&]<class T>() {
        FluxKernel<T> kernel(amps, kR, -1);
        const auto& [x, w] = wide_rule<T>(points);
        T sum = 0;
        for (int i = 0; i < points; ++i) sum += w[i] * kernel(x[i]).re;
        return static_cast<double>(2 * boost::math::constants::pi<T>() * sum);
    });
}

} // namespace

double FluxResult::max_abs_flux() const
{
    double m = 0.0;
    for (const auto& pt : grid) m = std::max(m, std::abs(pt.flux));
    return m;
}

FluxResult differential_flux_exact(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid)
{
    return flux_on_grid(amps, kR, grid, -1);
}

FluxResult differential_flux_truncated(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid,
                                       int order)
{
    if (order < 0) throw DomainError("differential_flux_truncated: negative order");
    return flux_on_grid(amps, kR, grid, order);
}

double first_order_flux_term(const PartialWaveAmplitudes& amps, double kR, double c)
{
    check_kr(kR);
    const cplx f = amplitude_eval(amps, c);
    const cplx h1 = h_coefficient(amps, 1, c);
    return -std::imag(std::conj(f) * h1) / kR;
}

std::vector<double> gauss_legendre_grid(int n)
{
    const auto rule = gauss_legendre_rule(n);
    return {rule.nodes().begin(), rule.nodes().end()};
}

TotalFlux total_flux(const PartialWaveAmplitudes& amps, double kR, const QuadratureRule& rule)
{
    return {total_flux_wide(amps, kR, rule.size()), rule.degree() >= 2 * amps.lmax()};
}

TotalFlux total_flux(const PartialWaveAmplitudes& amps, double kR)
{
    return total_flux(amps, kR, gauss_legendre_rule(amps.lmax() + 1));
}

double sigma_partial_wave(const PartialWaveAmplitudes& amps)
{
    double sum = 0.0;
    int j = 0;
    for (const auto& e : amps.eta()) sum += (2.0 * j++ + 1.0) * std::norm(e);
    return 4.0 * pi * sum;
}

//---------------------------------------------------------------------------//

UnitarityCheck unitarity_check(const PartialWaveAmplitudes& amps, double c, int points)
{
    if (!(std::abs(c) <= 1.0 + 1e-12)) throw DomainError("unitarity_check: cosine outside [-1, 1]");
    c = std::clamp(c, -1.0, 1.0);
    const int lmax = amps.lmax();
    const int n_theta = points > 0 ? points : lmax + 2;
    const int n_phi = 2 * n_theta;
    const auto coeffs = amps.legendre_coefficients();

    UnitarityCheck out;
    out.lhs = 4.0 * pi / amps.k() * amplitude_eval(amps, c).imag();

    // sigma along z, omega at polar angle acos(c) in the x-z plane
    const auto rule = gauss_legendre_rule(n_theta);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    cplx integral = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        const double x = rule.nodes()[i];
        const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
        const cplx f_sigma = std::conj(legendre_series(coeffs, x));
        cplx ring = 0.0;
        for (int m = 0; m < n_phi; ++m) {
            const double phi = 2.0 * pi * m / n_phi;
            const double cw = std::clamp(c * x + s * sx * std::cos(phi), -1.0, 1.0);
            ring += legendre_series(coeffs, cw);
        }
        integral += rule.weights()[i] * f_sigma * ring * (2.0 * pi / n_phi);
    }
    out.integral_quadrature = integral.real();
    out.imag_quadrature = std::abs(integral.imag());

    std::vector<double> p(lmax + 1);
    legendre_values<double>(lmax, c, p);
    double closed = 0.0;
    for (int j = 0; j <= lmax; ++j) closed += (2.0 * j + 1.0) * std::norm(amps.eta()[j]) * p[j];
    out.integral_closed = 4.0 * pi * closed;

    out.residual = std::max({std::abs(out.lhs - out.integral_quadrature), std::abs(out.lhs - out.integral_closed),
                             out.imag_quadrature});
    return out;
}

double unitarity_residual(const PartialWaveAmplitudes& amps, double c, int points)
{
    return unitarity_check(amps, c, points).residual;
}

double optical_theorem_residual(const PartialWaveAmplitudes& amps)
{
    return std::abs(sigma_partial_wave(amps) - 4.0 * pi / amps.k() * amplitude_eval(amps, 1.0).imag());
}

cplx interference_term(const PartialWaveAmplitudes& amps, double c)
{
    return -(4.0 * pi / cplx(0.0, 2.0)) * amplitude_eval(amps, c);
}

//---------------------------------------------------------------------------//

cplx symmetrized_amplitude(const PartialWaveAmplitudes& amps, double c, Parity parity)
{
    const cplx a = amplitude_eval(amps, c), b = amplitude_eval(amps, -c);
    return parity == Parity::plus ? a + b : a - b;
}

PartialWaveAmplitudes parity_projection(const PartialWaveAmplitudes& amps, Parity parity)
{
    const int keep = parity == Parity::plus ? 0 : 1;
    std::vector<cplx> eta(amps.eta().size(), 0.0);
    for (std::size_t j = 0; j < eta.size(); ++j) {
        if (static_cast<int>(j % 2) == keep) eta[j] = 2.0 * amps.eta()[j];
    }
    return PartialWaveAmplitudes(amps.k(), std::move(eta));
}

FluxResult identical_flux(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid, Parity parity)
{
    return differential_flux_exact(parity_projection(amps, parity), kR, grid);
}

SpinStatistics::SpinStatistics(int twice_spin, Statistics stats) : twice_spin_(twice_spin), stats_(stats)
{
    if (twice_spin < 0) throw InvariantError("spin must be non-negative");
    const bool integer_spin = twice_spin % 2 == 0;
    if (stats == Statistics::bose && !integer_spin) throw InvariantError("bosons need integer spin");
    if (stats == Statistics::fermi && integer_spin) throw InvariantError("fermions need half-odd spin");
    // (2S+1)^2 spin states: (S+1)(2S+1) symmetric, S(2S+1) antisymmetric
    const double S = twice_spin / 2.0;
    const double sym = (S + 1.0) / (2.0 * S + 1.0);
    w_plus_ = stats == Statistics::bose ? sym : 1.0 - sym;
}

FluxResult spin_averaged_flux(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid,
                              const SpinStatistics& spin)
{
    const auto plus = identical_flux(amps, kR, grid, Parity::plus);
    const auto minus = identical_flux(amps, kR, grid, Parity::minus);
    FluxResult out = plus;
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        out.grid[i].flux = spin.w_plus() * plus.grid[i].flux + spin.w_minus() * minus.grid[i].flux;
    }
    out.imag_residual = std::max(plus.imag_residual, minus.imag_residual);
    return out;
}

double spin_averaged_total_flux(const PartialWaveAmplitudes& amps, double kR, const SpinStatistics& spin)
{
    const int points = amps.lmax() + 1;
    const double plus = total_flux_wide(parity_projection(amps, Parity::plus), kR, points);
    const double minus = total_flux_wide(parity_projection(amps, Parity::minus), kR, points);
    return spin.w_plus() * plus + spin.w_minus() * minus;
}

double spin_averaged_sigma(const PartialWaveAmplitudes& amps, const SpinStatistics& spin)
{
    return spin.w_plus() * sigma_partial_wave(parity_projection(amps, Parity::plus)) +
           spin.w_minus() * sigma_partial_wave(parity_projection(amps, Parity::minus));
}

//---------------------------------------------------------------------------//

std::vector<ScanPoint> r_scan(const PartialWaveAmplitudes& amps, double kR_min, double kR_max, int points,
                              std::optional<double> c)
{
    check_kr(kR_min);
    check_kr(kR_max);
    if (kR_max < kR_min) throw DomainError("r_scan: kR_max < kR_min");
    if (points < 1) throw DomainError("r_scan: need at least one point");
    std::vector<ScanPoint> out;
    out.reserve(points);
    const double sigma = sigma_partial_wave(amps);
    const auto rule = gauss_legendre_rule(amps.lmax() + 1);
    double far = 0.0;
    if (c) far = std::norm(amplitude_eval(amps, *c));
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        const double kR = i == points - 1 && points > 1 ? kR_max : kR_min * std::pow(kR_max / kR_min, t);
        ScanPoint pt{kR, 0.0, 0.0};
        double ref = sigma;
        if (c) {
            const double grid[] = {*c};
            pt.value = differential_flux_exact(amps, kR, grid).grid[0].flux;
            ref = far;
        } else {
            pt.value = total_flux(amps, kR, rule).value;
        }
        pt.deviation = ref != 0.0 ? pt.value / ref - 1.0 : (pt.value == 0.0 ? 0.0 : HUGE_VAL);
        out.push_back(pt);
    }
    return out;
}

} // namespace fdscat
