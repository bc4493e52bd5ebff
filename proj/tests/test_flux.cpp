#include "fdscat/error.hpp"
#include "fdscat/flux.hpp"
#include "fdscat/phase_shifts.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fdscat;
using fdscat::testing::random_elastic;
using fdscat::testing::two_channel;

TEST_CASE("two-channel reference values")
{
    const auto amps = two_channel();
    CHECK(sigma_partial_wave(amps) == doctest::Approx(4.376331005446941).epsilon(1e-15));
    const double c[] = {1.0};
    CHECK(differential_flux_exact(amps, 2.0, c).grid[0].flux == doctest::Approx(1.147230410713022).epsilon(1e-14));
    CHECK(differential_flux_truncated(amps, 2.0, c, 0).grid[0].flux ==
          doctest::Approx(1.131032846610928).epsilon(1e-15));
    CHECK(first_order_flux_term(amps, 2.0, 1.0) == doctest::Approx(0.0844423731718420).epsilon(1e-14));
}

TEST_CASE("first truncation increment is -(1/kR) Im[conj(f) h_1]")
{
    std::mt19937_64 rng(21);
    const auto amps = random_elastic(rng, 9);
    const auto grid = gauss_legendre_grid(7);
    for (double kR : {3.0, 30.0}) {
        const auto o0 = differential_flux_truncated(amps, kR, grid, 0);
        const auto o1 = differential_flux_truncated(amps, kR, grid, 1);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(o1.grid[i].flux - o0.grid[i].flux - first_order_flux_term(amps, kR, grid[i])) <= 1e-12);
        }
    }
}

TEST_CASE("pure s-wave flux has no finite-R correction")
{
    const auto s = PartialWaveAmplitudes::from_phase_shifts({1.0, 1.0, {0.9}});
    const double grid[] = {-1.0, 0.0, 0.5, 1.0};
    const auto exact = differential_flux_exact(s, 0.3, grid);
    for (const auto& p : exact.grid) CHECK(p.flux == std::norm(s.eta()[0]));
}

TEST_CASE("total flux is independent of R")
{
    std::mt19937_64 rng(22);
    for (int set = 0; set < 5; ++set) {
        const auto amps = random_elastic(rng, 12);
        const double sigma = sigma_partial_wave(amps);
        for (double kR : {0.5, 2.0, 1e4}) {
            const auto t = total_flux(amps, kR);
            CHECK(t.orthogonality_exact);
            CHECK(std::abs(t.value / sigma - 1.0) <= 1e-10);
        }
    }
    // a rule too short for the partial-wave content is flagged
    const auto amps = random_elastic(rng, 8);
    CHECK_FALSE(total_flux(amps, 2.0, gauss_legendre_rule(4)).orthogonality_exact);
}

TEST_CASE("unitarity and the optical theorem")
{
    const auto hs = PartialWaveAmplitudes::from_phase_shifts(hard_sphere_shifts(1.0, 1.0, 10));
    const double sigma = sigma_partial_wave(hs);
    for (double c : {-1.0, -0.3, 0.4, 1.0}) {
        const auto u = unitarity_check(hs, c);
        CHECK(u.residual <= 1e-10 * sigma);
        CHECK(std::abs(u.integral_quadrature - u.integral_closed) <= 1e-12 * sigma);
        CHECK(u.imag_quadrature <= 1e-12 * sigma);
    }
    CHECK(optical_theorem_residual(hs) <= 1e-10 * sigma);

    const auto off = perturb_off_unitarity(hs, 1e-3);
    CHECK(unitarity_residual(off, 0.3) > 1e-3 * sigma_partial_wave(off));
    CHECK(optical_theorem_residual(off) > 1e-3 * sigma_partial_wave(off));
    CHECK(std::abs(interference_term(hs, 1.0) - cplx(0.0, 2.0 * std::numbers::pi) * amplitude_eval(hs, 1.0)) < 1e-14);
}

TEST_CASE("identical particles")
{
    std::mt19937_64 rng(23);
    const auto amps = random_elastic(rng, 7);
    const auto plus = parity_projection(amps, Parity::plus);
    const auto minus = parity_projection(amps, Parity::minus);
    for (int j = 0; j <= 7; ++j) {
        CHECK((j % 2 ? plus : minus).eta()[j] == cplx(0.0));
        CHECK((j % 2 ? minus : plus).eta()[j] == 2.0 * amps.eta()[j]);
    }
    for (double c : {-0.8, 0.1, 0.6}) {
        CHECK(std::abs(symmetrized_amplitude(amps, c, Parity::plus) - amplitude_eval(plus, c)) <= 1e-14);
        CHECK(std::abs(symmetrized_amplitude(amps, c, Parity::minus) - amplitude_eval(minus, c)) <= 1e-14);
    }

    const SpinStatistics boson0(0, Statistics::bose), fermion(1, Statistics::fermi);
    CHECK(boson0.w_plus() == 1.0);
    CHECK(boson0.w_minus() == 0.0);
    CHECK(fermion.w_plus() == 0.25);
    CHECK(fermion.w_minus() == 0.75);
    CHECK_THROWS_AS(SpinStatistics(1, Statistics::bose), InvariantError);
    CHECK_THROWS_AS(SpinStatistics(2, Statistics::fermi), InvariantError);

    const double target = spin_averaged_sigma(amps, fermion);
    for (double kR : {0.5, 10.0}) {
        CHECK(std::abs(spin_averaged_total_flux(amps, kR, fermion) / target - 1.0) <= 1e-10);
    }
    const double grid[] = {0.25};
    const auto sf = spin_averaged_flux(amps, 5.0, grid, boson0);
    CHECK(sf.grid[0].flux == doctest::Approx(differential_flux_exact(plus, 5.0, grid).grid[0].flux).epsilon(1e-15));
}

TEST_CASE("kR scans")
{
    const auto amps = two_channel();
    const auto total = r_scan(amps, 0.5, 1e3, 7);
    REQUIRE(total.size() == 7);
    CHECK(total.front().kR == 0.5);
    CHECK(total.back().kR == 1e3);
    for (const auto& p : total) CHECK(std::abs(p.deviation) <= 1e-10);

    const auto angle = r_scan(amps, 10.0, 1e3, 5, 1.0);
    std::vector<double> x, y;
    for (const auto& p : angle) {
        x.push_back(p.kR);
        y.push_back(p.deviation);
    }
    CHECK(fdscat::testing::loglog_slope(x, y) == doctest::Approx(-1.0).epsilon(0.05));
    CHECK_THROWS_AS(r_scan(amps, 2.0, 1.0, 3), DomainError);
    CHECK_THROWS_AS(r_scan(amps, 1.0, 2.0, 0), DomainError);
}

TEST_CASE("flux argument checks")
{
    const auto amps = two_channel();
    const double bad[] = {1.5};
    CHECK_THROWS_AS(differential_flux_exact(amps, 1.0, bad), DomainError);
    const double ok[] = {0.0};
    CHECK_THROWS_AS(differential_flux_exact(amps, -1.0, ok), DomainError);
    CHECK_THROWS_AS(differential_flux_truncated(amps, 1.0, ok, -1), DomainError);
}
