#pragma once

#include "fdscat/amplitude.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace fdscat::testing
{

/// Elastic amplitudes from uniformly drawn shifts in (-pi/2, pi/2), j = 0..lmax.
inline PartialWaveAmplitudes random_elastic(std::mt19937_64& rng, int lmax, double k = 1.0)
{
    std::uniform_real_distribution<double> shift(-std::numbers::pi / 2, std::numbers::pi / 2);
    PhaseShiftTable t{k, 1.0, std::vector<double>(lmax + 1)};
    for (auto& d : t.shifts) d = shift(rng);
    return PartialWaveAmplitudes::from_phase_shifts(t);
}

/// The two-channel reference set: delta_0 = 0.5, delta_1 = 0.2 at k = 1.
inline PartialWaveAmplitudes two_channel() { return PartialWaveAmplitudes::from_phase_shifts({1.0, 1.0, {0.5, 0.2}}); }

/// Least-squares slope of log|y| against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace fdscat::testing
