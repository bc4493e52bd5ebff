#include "fdscat/amplitude.hpp"

#include "fdscat/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fdscat
{

namespace
{

void check_c(double c)
{
    if (!(std::abs(c) <= 1.0 + 1e-12)) throw DomainError("cosine c must lie in [-1, 1]");
}

void check_kr(double kR)
{
    if (!(kR > 0.0) || !std::isfinite(kR)) throw DomainError("kR must be positive and finite");
}

} // namespace

PartialWaveAmplitudes::PartialWaveAmplitudes(double k, std::vector<cplx> eta) : k_(k), eta_(std::move(eta))
{
    if (!(k_ > 0.0) || !std::isfinite(k_)) throw InvariantError("amplitudes: k must be positive");
    if (eta_.empty()) throw InvariantError("amplitudes: no partial waves");
    for (std::size_t j = 0; j < eta_.size(); ++j) {
        if (!std::isfinite(eta_[j].real()) || !std::isfinite(eta_[j].imag())) {
            throw InvariantError("amplitudes: non-finite eta at j = " + std::to_string(j));
        }
    }
}

PartialWaveAmplitudes PartialWaveAmplitudes::from_phase_shifts(const PhaseShiftTable& table)
{
    table.validate();
    std::vector<cplx> eta;
    eta.reserve(table.shifts.size());
    for (double d : table.shifts) eta.push_back(std::polar(std::sin(d), d) / table.k);
    return PartialWaveAmplitudes(table.k, std::move(eta));
}

double PartialWaveAmplitudes::unitarity_defect() const
{
    double worst = 0.0;
    for (const auto& e : eta_) {
        const cplx w = k_ * e;
        worst = std::max(worst, std::abs(w.imag() - std::norm(w)));
    }
    return worst;
}

std::vector<cplx> PartialWaveAmplitudes::legendre_coefficients() const
{
    std::vector<cplx> g(eta_.size());
    for (std::size_t j = 0; j < eta_.size(); ++j) g[j] = (2.0 * j + 1.0) * eta_[j];
    return g;
}

cplx amplitude_eval(const PartialWaveAmplitudes& amps, double c)
{
    check_c(c);
    return legendre_series(amps.legendre_coefficients(), c);
}

//---------------------------------------------------------------------------//

cplx ExpansionCoefficient::operator()(double c) const
{
    check_c(c);
    return legendre_series(g, c);
}

ExpansionCoefficient h_expansion(const PartialWaveAmplitudes& amps, int s)
{
    if (s < 0) throw DomainError("h_s: negative order");
    ExpansionCoefficient h{s, {}};
    if (s > amps.lmax()) return h;
    const auto eta = amps.eta();
    h.g.assign(eta.size(), 0.0);
    for (int j = s; j <= amps.lmax(); ++j) h.g[j] = detail::expansion_weight(j, s) * (2.0 * j + 1.0) * eta[j];
    return h;
}

cplx h_coefficient(const PartialWaveAmplitudes& amps, int s, double c) { return h_expansion(amps, s)(c); }

ExpansionCoefficient h_recurrence(const PartialWaveAmplitudes& amps, int s)
{
    if (s < 0) throw DomainError("h_s: negative order");
    ExpansionCoefficient h{0, amps.legendre_coefficients()};
    for (int t = 1; t <= s; ++t) {
        for (std::size_t j = 0; j < h.g.size(); ++j) {
            const double lambda = static_cast<double>(j) * (j + 1.0);
            h.g[j] *= (lambda - t * (t - 1.0)) / t;
        }
        h.s = t;
    }
    return h;
}

cplx h_recurrence_check(const PartialWaveAmplitudes& amps, int s, double c) { return h_recurrence(amps, s)(c); }

cplx h1_finite_difference(const PartialWaveAmplitudes& amps, double c, double step)
{
    if (!(step > 0.0) || !(std::abs(c) <= 1.0 - 2.0 * step)) {
        throw DomainError("h1_finite_difference: stencil leaves [-1, 1]");
    }
    const auto g = amps.legendre_coefficients();
    const cplx fm2 = legendre_series(g, c - 2 * step), fm1 = legendre_series(g, c - step);
    const cplx f0 = legendre_series(g, c);
    const cplx fp1 = legendre_series(g, c + step), fp2 = legendre_series(g, c + 2 * step);
    const cplx d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * step);
    const cplx d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * step * step);
    return -(1.0 - c * c) * d2 + 2.0 * c * d1;
}

//---------------------------------------------------------------------------//

cplx wave_tail_multipole(const PartialWaveAmplitudes& amps, double kR, double c)
{
    check_kr(kR);
    check_c(c);
    const int lmax = amps.lmax();
    const auto chi = chi_values(lmax, cplx(0.0, -kR));
    const auto eta = amps.eta();
    std::vector<cplx> coeffs(lmax + 1);
    for (int j = 0; j <= lmax; ++j) coeffs[j] = chi[j] * (2.0 * j + 1.0) * eta[j];
    return legendre_series(coeffs, c);
}

AsymptoticTail wave_tail_asymptotic(const PartialWaveAmplitudes& amps, double kR, double c, std::optional<int> order)
{
    check_kr(kR);
    check_c(c);
    if (order && *order < 0) throw DomainError("wave_tail_asymptotic: negative order");
    const int lmax = amps.lmax();
    const cplx u = 1.0 / cplx(0.0, -2.0 * kR);

    std::vector<cplx> terms(lmax + 1);
    AsymptoticTail out;
    out.term_magnitudes.resize(lmax + 1);
    cplx um = 1.0;
    double smallest = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= lmax; ++s) {
        terms[s] = h_coefficient(amps, s, c) * um;
        out.term_magnitudes[s] = std::abs(terms[s]);
        if (out.term_magnitudes[s] < smallest) {
            smallest = out.term_magnitudes[s];
            out.smallest_term = s;
        }
        um *= u;
    }
    out.order = order.value_or(out.smallest_term);
    out.past_smallest_term = out.order > out.smallest_term;
    cplx sum = 0.0;
    for (int s = std::min(out.order, lmax); s >= 0; --s) sum += terms[s];
    out.value = std::polar(1.0, kR) * sum;
    return out;
}

PartialWaveAmplitudes perturb_off_unitarity(const PartialWaveAmplitudes& amps, double distance)
{
    const double k = amps.k();
    const cplx centre(0.0, 0.5);
    std::vector<cplx> eta(amps.eta().begin(), amps.eta().end());
    for (auto& e : eta) {
        const cplx d = k * e - centre;
        const double r = std::abs(d);
        const cplx dir = r > 0.0 ? d / r : cplx(0.0, -1.0);
        e = (centre + (r + distance) * dir) / k;
    }
    return PartialWaveAmplitudes(k, std::move(eta));
}

} // namespace fdscat
