#pragma once

#include "fdscat/phase_shifts.hpp"
#include "fdscat/special_functions.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fdscat
{

/// Partial-wave amplitudes eta_j (length units), j = 0..L, at wavenumber k.
/// The on-shell amplitude is f(c) = sum_j (2j+1) eta_j P_j(c).
class PartialWaveAmplitudes
{
  public:
    /// Throws InvariantError for k <= 0, an empty array or non-finite entries.
    PartialWaveAmplitudes(double k, std::vector<cplx> eta);

    /// eta_j = e^{i delta_j} sin(delta_j) / k.
    static PartialWaveAmplitudes from_phase_shifts(const PhaseShiftTable& table);

    double k() const noexcept { return k_; }
    std::span<const cplx> eta() const noexcept { return eta_; }
    int lmax() const noexcept { return static_cast<int>(eta_.size()) - 1; }

    /// max_j |Im(k eta_j) - |k eta_j|^2|: zero on the elastic unitarity circle.
    double unitarity_defect() const;
    bool is_elastic(double tol = 1e-14) const { return unitarity_defect() <= tol; }

    /// (2j+1) eta_j, the Legendre coefficients of f.
    std::vector<cplx> legendre_coefficients() const;

  private:
    double k_;
    std::vector<cplx> eta_;
};

/// f(c) by Clenshaw summation. DomainError for |c| > 1.
cplx amplitude_eval(const PartialWaveAmplitudes& amps, double c);

/// h_s(c) held by its Legendre coefficients
/// g_j = (1/s!) (j+s)!/(j-s)! (2j+1) eta_j, zero for j < s.
struct ExpansionCoefficient
{
    int s = 0;
    std::vector<cplx> g;

    /// Clenshaw sum of g at c. An empty coefficient list evaluates to 0.
    cplx operator()(double c) const;
};

/// h_s from the closed partial-wave sum; identically zero when s > L.
ExpansionCoefficient h_expansion(const PartialWaveAmplitudes& amps, int s);
cplx h_coefficient(const PartialWaveAmplitudes& amps, int s, double c);

/// h_s built by s-fold application of h_s = [(Lambda - s(s-1))/s] h_{s-1},
/// Lambda acting as j(j+1) on each Legendre coefficient.
ExpansionCoefficient h_recurrence(const PartialWaveAmplitudes& amps, int s);
cplx h_recurrence_check(const PartialWaveAmplitudes& amps, int s, double c);

/// h_1(c) = -d/dc[(1 - c^2) df/dc] from 5-point central differences of f
/// with spacing `step`. DomainError unless |c| <= 1 - 2 step.
cplx h1_finite_difference(const PartialWaveAmplitudes& amps, double c, double step = 1e-3);

/// R times the scattered wave, sum_j chi_j(-ikR) (2j+1) eta_j P_j(c).
/// DomainError for kR <= 0 or |c| > 1.
cplx wave_tail_multipole(const PartialWaveAmplitudes& amps, double kR, double c);

struct AsymptoticTail
{
    cplx value;
    int order = 0;               ///< highest power of 1/(-2ikR) included
    int smallest_term = 0;       ///< index s* of the smallest |h_s/(-2ikR)^s|, s <= L
    bool past_smallest_term = false; ///< order > s*: the series is being summed past its optimum
    std::vector<double> term_magnitudes;
};

/// e^{ikR} [f(c) + sum_{s=1..order} h_s(c) / (-2ikR)^s]. Without an explicit
/// order the series is cut at its smallest term. Divergence is reported in
/// the diagnostics, never thrown.
AsymptoticTail wave_tail_asymptotic(const PartialWaveAmplitudes& amps, double kR, double c,
                                    std::optional<int> order = std::nullopt);

/// Moves every k eta_j radially off the unitarity circle |k eta - i/2| = 1/2
/// by `distance` (outward for distance > 0, i.e. |S_j| > 1). Used to show the
/// unitarity diagnostics are not tautological.
PartialWaveAmplitudes perturb_off_unitarity(const PartialWaveAmplitudes& amps, double distance);

} // namespace fdscat
