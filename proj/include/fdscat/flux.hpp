#pragma once

#include "fdscat/amplitude.hpp"
#include "fdscat/quadrature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fdscat
{

struct FluxPoint
{
    double c = 0;
    double flux = 0; ///< area units, same as |f|^2
};

struct FluxResult
{
    double kR = 0;
    std::vector<FluxPoint> grid;
    /// Largest |Im| of the double sum before it was discarded.
    double imag_residual = 0;
    /// Truncation order of the Wronskian series; empty for the exact sum.
    std::optional<int> order;

    double max_abs_flux() const;
};

/// Outgoing differential flux through the sphere of radius R,
/// Re sum_{l,j} conj(a_l) a_j W_lj(kR) with a_j = (2j+1) eta_j P_j(c).
/// Summed in extended precision. DomainError for kR <= 0 or |c| > 1.
FluxResult differential_flux_exact(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid);

/// Same double sum with W_lj truncated after (1/(-2ikR))^order; order 0 is
/// |f(c)|^2.
FluxResult differential_flux_truncated(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid,
                                       int order);

/// First-order correction -(1/kR) Im[conj(f) h_1] at c.
double first_order_flux_term(const PartialWaveAmplitudes& amps, double kR, double c);

/// Gauss-Legendre nodes as an angular grid.
std::vector<double> gauss_legendre_grid(int n);

struct TotalFlux
{
    double value = 0;
    /// The rule integrates P_l P_j exactly (degree >= 2L); otherwise the
    /// off-diagonal terms no longer cancel identically.
    bool orthogonality_exact = true;
};

/// 2 pi int_{-1}^{1} flux(c) dc with the given rule, in extended precision.
TotalFlux total_flux(const PartialWaveAmplitudes& amps, double kR, const QuadratureRule& rule);
/// Uses an (L+1)-point rule.
TotalFlux total_flux(const PartialWaveAmplitudes& amps, double kR);

/// sigma = 4 pi sum_j (2j+1) |eta_j|^2.
double sigma_partial_wave(const PartialWaveAmplitudes& amps);

struct UnitarityCheck
{
    double lhs = 0;                  ///< (4 pi / k) Im f(c)
    double integral_quadrature = 0;  ///< int dOmega conj f(n.s) f(n.w), 2-D product rule
    double integral_closed = 0;      ///< 4 pi sum_j (2j+1) |eta_j|^2 P_j(c)
    double imag_quadrature = 0;      ///< |Im| of the quadrature integral
    double residual = 0;             ///< worst deviation of either route from lhs
};

/// Unitarity relation between directions with cosine c = (w.s). The angular
/// integral is done by trapezoid in phi and Gauss-Legendre in cos(theta),
/// both exact for the partial-wave content; `points` <= 0 picks L + 2.
UnitarityCheck unitarity_check(const PartialWaveAmplitudes& amps, double c, int points = 0);
double unitarity_residual(const PartialWaveAmplitudes& amps, double c, int points = 0);

/// |sigma - (4 pi / k) Im f(1)|.
double optical_theorem_residual(const PartialWaveAmplitudes& amps);

/// -(4 pi / 2i) f(c): the forward-cone interference contribution.
cplx interference_term(const PartialWaveAmplitudes& amps, double c);

//---------------------------------------------------------------------------//
// Identical particles
//---------------------------------------------------------------------------//

enum class Parity
{
    plus,
    minus
};

/// F(c) = f(c) +/- f(-c).
cplx symmetrized_amplitude(const PartialWaveAmplitudes& amps, double c, Parity parity);

/// Amplitudes of F: 2 eta_j for j of the selected parity (even for plus,
/// odd for minus), exactly zero otherwise.
PartialWaveAmplitudes parity_projection(const PartialWaveAmplitudes& amps, Parity parity);

FluxResult identical_flux(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid, Parity parity);

enum class Statistics
{
    bose,
    fermi
};

/// Spin S = twice_spin / 2 with the symmetric/antisymmetric spin-state
/// fractions: bose w_plus = (S+1)/(2S+1), fermi w_plus = S/(2S+1).
class SpinStatistics
{
  public:
    /// InvariantError for bose with half-odd S or fermi with integer S.
    SpinStatistics(int twice_spin, Statistics stats);

    int twice_spin() const noexcept { return twice_spin_; }
    Statistics statistics() const noexcept { return stats_; }
    double w_plus() const noexcept { return w_plus_; }
    double w_minus() const noexcept { return 1.0 - w_plus_; }

  private:
    int twice_spin_;
    Statistics stats_;
    double w_plus_;
};

FluxResult spin_averaged_flux(const PartialWaveAmplitudes& amps, double kR, std::span<const double> grid,
                              const SpinStatistics& spin);
/// 2 pi int of the spin-averaged flux with an exact rule.
double spin_averaged_total_flux(const PartialWaveAmplitudes& amps, double kR, const SpinStatistics& spin);
/// R-independent value of the above: 16 pi sum_j w_parity(j) (2j+1) |eta_j|^2.
double spin_averaged_sigma(const PartialWaveAmplitudes& amps, const SpinStatistics& spin);

//---------------------------------------------------------------------------//
// kR scans
//---------------------------------------------------------------------------//

struct ScanPoint
{
    double kR = 0;
    double value = 0;
    /// angle mode: flux / |f(c)|^2 - 1; total mode: value / sigma - 1
    double deviation = 0;
};

/// Logarithmically spaced kR in [kR_min, kR_max]. With a cosine the value is
/// the exact differential flux there; without one it is the total flux.
std::vector<ScanPoint> r_scan(const PartialWaveAmplitudes& amps, double kR_min, double kR_max, int points,
                              std::optional<double> c = std::nullopt);

} // namespace fdscat
