#pragma once

#include "fdscat/special_functions.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fdscat::oracle
{

/// Outcome of one brute-force verification. `pass` compares max_rel_err with
/// the tolerance, or max_abs_err when the checked quantity can vanish.
struct OracleReport
{
    std::string name;
    int samples = 0;
    double max_abs_err = 0;
    double max_rel_err = 0;
    double tolerance = 0;
    bool relative = true;
    bool pass = false;

    /// Folds one sample (computed vs reference) into the maxima.
    void add(cplx value, cplx reference);
    /// Recomputes `pass` from the maxima and the tolerance.
    OracleReport& finish();
};

/// Adaptive Gauss-Kronrod (15-point) of a complex integrand over [a, b],
/// first cut into `panels` equal pieces (one per oscillation of the phase).
cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b, int panels = 1,
                        double tol = 1e-12);

//---------------------------------------------------------------------------//
// Multipole expansions
//---------------------------------------------------------------------------//

/// e^{ik|Rn - rs|}/(4 pi |Rn - rs|) against the truncated sum
/// (1/(4 pi k R r)) sum_l i^{-l} chi_l(-ikR) psi_l(kr) (2l+1) P_l(n.s), r < R.
cplx green_closed_form(double k, double R, double r, double n_dot_s);
cplx green_multipole_sum(double k, double R, double r, double n_dot_s, int l_max);
OracleReport green_multipole_check(double k, double R, double r, double n_dot_s, int l_max, double tol = 1e-8);

/// e^{-ikr c} against (1/kr) sum_l i^{-l} psi_l(kr) (2l+1) P_l(c).
cplx plane_wave_multipole_sum(double k, double r, double c, int l_max);
OracleReport plane_wave_multipole_check(double k, double r, double c, int l_max, double tol = 1e-10);

//---------------------------------------------------------------------------//
// Integrals
//---------------------------------------------------------------------------//

/// int_{-1}^{1} e^{ikr(1-c)} H(c) dc for the polynomial H = sum_n h[n] c^n, in
/// closed form G(1) - e^{2ikr} G(-1) with
/// G = sum_m (-1)^m H^{(m)} / (-ikr)^{m+1}, against adaptive quadrature.
cplx lemma2_closed_form(double kr, const std::vector<double>& h);
OracleReport lemma2_check(double kr, const std::vector<double>& h, double tol = 1e-10);

/// P_l(1 - xi) from the explicit sum over (l+s)!/((l-s)! s!^2) (-xi/2)^s.
double legendre_shifted_sum(int l, double xi);

/// legendre_shifted_sum against legendre(l, 1 - xi) on xi in [0, 2], l <= lmax.
OracleReport shifted_legendre_check(int lmax, double tol = 1e-12);

/// int_0^inf e^{z(1-xi)} P_l(1-xi) d xi against chi_l(-z)/z. Converges only
/// for Re z > 0; DomainError for Re z < 0.5. The tail is cut where the
/// integrand drops below 1e-17 of its scale.
OracleReport a6_check(int l, cplx z, double tol = 1e-8);

/// int_0^{2 pi} P_l(cos b cos t + sin b sin t cos phi) d phi
/// against 2 pi P_l(cos b) P_l(cos t).
OracleReport addition_theorem_check(int l, double beta, double theta, double tol = 1e-10);

/// (k/2) R^2 int dOmega e^{ikR n.(w - s)} n.(w + s) with k = 1, R = kR, by
/// nested adaptive quadrature; must vanish to 1e-6 kR^2.
cplx plane_wave_flux_integral(double kR, double w_dot_s);
OracleReport plane_wave_flux_check(double kR, double w_dot_s);

//---------------------------------------------------------------------------//
// chi-polynomial algebra
//---------------------------------------------------------------------------//

/// Exact check that (chi_l(ikR) <-> d_R chi_j(-ikR))/(2ik), obtained by
/// differentiating the chi products symbolically, has the Laurent
/// coefficients of wronskian_factor_exact; then compares numerically at kR.
OracleReport wronskian_direct_check(int l, int j, double kR, double tol = 1e-12);

/// Diagonal factor W_jj = 1 by numerical differentiation-free evaluation of
/// chi_j(z) chi_j'(-z) + chi_j'(z) chi_j(-z) = -2 at z = ikR, for j <= jmax.
OracleReport diagonal_wronskian_check(int jmax, const std::vector<double>& kRs, double tol = 1e-12);

/// chi_j(z) <-> d_z chi_j(z) = 0 (exact, then at sample points).
OracleReport footnote_zero_check(int jmax, const std::vector<cplx>& zs, double tol = 1e-12);

/// z [chi_j(z) (<-> d_z + 1/z) (chi_j(-z)/z)] = 2 (exact, then at sample points).
OracleReport bracket_identity_check(int jmax, const std::vector<cplx>& zs, double tol = 1e-12);

/// psi_l(z) = [i^{-l} chi_l(-iz) - i^l chi_l(iz)] / (2i) for complex z with
/// Re z >= 0. The error is measured against max(|psi_l|, |chi_l(-iz)|): the
/// right side cancels catastrophically when |z| << l.
OracleReport riccati_reconstruction_check(int lmax, const std::vector<cplx>& zs, double tol = 1e-10);

/// prod_mu [l(l+1) - mu(mu-1)] == (l+s)!/(l-s)! exactly, l <= lmax.
OracleReport factorial_product_check(int lmax);

/// A_1(l, j) == j(j+1) - l(l+1) exactly, l, j <= lmax.
OracleReport a1_delta_check(int lmax);

//---------------------------------------------------------------------------//

/// Every check above at fixed, representative parameters.
std::vector<OracleReport> run_default_suite();

} // namespace fdscat::oracle
