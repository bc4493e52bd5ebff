#include "fdscat/quadrature.hpp"

#include "fdscat/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fdscat
{

namespace
{

// P_n(x) and P_n'(x) by recurrence.
template <class T>
std::pair<T, T> legendre_with_derivative(int n, T x)
{
    T p0 = 1, p1 = x;
    for (int k = 1; k < n; ++k) {
        const T p2 = (T(2 * k + 1) * x * p1 - T(k) * p0) / T(k + 1);
        p0 = p1;
        p1 = p2;
    }
    if (n == 0) return {T(1), T(0)};
    const T dp = T(n) * (x * p1 - p0) / (x * x - T(1));
    return {p1, dp};
}

} // namespace

QuadratureRule gauss_legendre_rule(int n)
{
    if (n < 1 || n > 4096) throw DomainError("gauss_legendre_rule: n must be in [1, 4096], got " + std::to_string(n));

    QuadratureRule rule;
    rule.nodes_.resize(n);
    rule.weights_.resize(n);
    rule.nodes_ext_.resize(n);
    rule.weights_ext_.resize(n);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // i-th largest root
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre_with_derivative(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw ConvergenceError("gauss_legendre_rule: root " + std::to_string(i) + " of P_" + std::to_string(n) +
                                   " did not converge");
        }
        // polish in extended precision
        ext_real xe = x;
        ext_real dpe = 1;
        for (int it = 0; it < 3; ++it) {
            const auto [p, dp] = legendre_with_derivative<ext_real>(n, xe);
            xe -= p / dp;
            dpe = dp;
        }
        dpe = legendre_with_derivative<ext_real>(n, xe).second;
        const ext_real we = ext_real(2) / ((ext_real(1) - xe * xe) * dpe * dpe);

        const int lo = i, hi = n - 1 - i;
        rule.nodes_ext_[hi] = xe;
        rule.nodes_ext_[lo] = -xe;
        rule.weights_ext_[hi] = we;
        rule.weights_ext_[lo] = we;
    }
    if (n % 2 == 1) rule.nodes_ext_[n / 2] = 0; // exact middle root
    for (int i = 0; i < n; ++i) {
        rule.nodes_[i] = static_cast<double>(rule.nodes_ext_[i]);
        rule.weights_[i] = static_cast<double>(rule.weights_ext_[i]);
    }
    return rule;
}

} // namespace fdscat
