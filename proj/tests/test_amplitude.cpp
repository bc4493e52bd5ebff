#include "fdscat/amplitude.hpp"
#include "fdscat/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace fdscat;
using fdscat::testing::random_elastic;
using fdscat::testing::two_channel;

TEST_CASE("amplitudes from phase shifts")
{
    const auto a = PartialWaveAmplitudes::from_phase_shifts({2.0, 1.0, {0.5}});
    CHECK(std::abs(a.eta()[0] - cplx(0.2103677462019741, 0.1149244235329651)) < 1e-16);
    CHECK(a.is_elastic());

    const auto f = two_channel();
    const cplx f1 = amplitude_eval(f, 1.0);
    CHECK(f1.imag() == doctest::Approx(0.3482573560616025).epsilon(1e-15));
    CHECK(std::norm(f1) == doctest::Approx(1.131032846610928).epsilon(1e-15));
    CHECK_THROWS_AS(amplitude_eval(f, 1.1), DomainError);

    CHECK_THROWS_AS(PartialWaveAmplitudes(0.0, {cplx(1.0)}), InvariantError);
    CHECK_THROWS_AS(PartialWaveAmplitudes(1.0, {}), InvariantError);
    CHECK_THROWS_AS(PartialWaveAmplitudes(1.0, {cplx(NAN, 0.0)}), InvariantError);
}

TEST_CASE("h_s: closed sum against the Lambda recurrence")
{
    std::mt19937_64 rng(11);
    for (int set = 0; set < 20; ++set) {
        const auto amps = random_elastic(rng, 8);
        for (int s = 0; s <= 5; ++s) {
            for (double c : {-0.9, -0.2, 0.4, 1.0}) {
                const cplx a = h_coefficient(amps, s, c);
                const cplx b = h_recurrence_check(amps, s, c);
                CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
            }
        }
    }
    // h_s vanishes past the last partial wave
    CHECK(h_coefficient(two_channel(), 2, 0.3) == cplx(0.0));
    CHECK(h_coefficient(two_channel(), 0, 0.3) == amplitude_eval(two_channel(), 0.3));
    CHECK_THROWS_AS(h_expansion(two_channel(), -1), DomainError);
}

TEST_CASE("h_1 is the angular operator applied to f")
{
    std::mt19937_64 rng(12);
    const auto amps = random_elastic(rng, 6);
    double scale = 0.0;
    for (double c = -0.9; c <= 0.9; c += 0.1) scale = std::max(scale, std::abs(h_coefficient(amps, 1, c)));
    for (double c = -0.9; c <= 0.9; c += 0.1) {
        CHECK(std::abs(h1_finite_difference(amps, c) - h_coefficient(amps, 1, c)) <= 1e-5 * scale);
    }
    CHECK_THROWS_AS(h1_finite_difference(amps, 0.9995), DomainError);
}

TEST_CASE("multipole tail equals the terminated asymptotic series")
{
    std::mt19937_64 rng(13);
    for (int lmax : {1, 4, 10}) {
        const auto amps = random_elastic(rng, lmax);
        for (double kR : {2.0, 5.0, 20.0}) {
            for (double c : {-1.0, 0.0, 0.7}) {
                const cplx m = wave_tail_multipole(amps, kR, c);
                const auto t = wave_tail_asymptotic(amps, kR, c, lmax);
                CHECK(std::abs(m - t.value) <= 1e-11 * std::abs(m));
            }
        }
    }
}

TEST_CASE("asymptotic tail diagnostics")
{
    const auto s_wave = PartialWaveAmplitudes::from_phase_shifts({1.0, 1.0, {0.4}});
    const auto t0 = wave_tail_asymptotic(s_wave, 3.0, 0.2, 0);
    CHECK(std::abs(t0.value - std::polar(1.0, 3.0) * s_wave.eta()[0]) < 1e-16);
    CHECK(std::abs(wave_tail_multipole(s_wave, 3.0, 0.2) - t0.value) < 1e-16);

    std::mt19937_64 rng(14);
    const auto amps = random_elastic(rng, 12);
    const auto opt = wave_tail_asymptotic(amps, 0.5, 0.3);
    CHECK(opt.order == opt.smallest_term);
    CHECK_FALSE(opt.past_smallest_term);
    CHECK(opt.term_magnitudes.size() == 13);
    const auto past = wave_tail_asymptotic(amps, 0.5, 0.3, 12);
    CHECK(past.past_smallest_term == (opt.smallest_term < 12));
    CHECK_THROWS_AS(wave_tail_multipole(amps, 0.0, 0.3), DomainError);
    CHECK_THROWS_AS(wave_tail_asymptotic(amps, 1.0, 0.3, -1), DomainError);
}

TEST_CASE("perturbation off the unitarity circle")
{
    const auto amps = two_channel();
    const auto p = perturb_off_unitarity(amps, 1e-3);
    CHECK_FALSE(p.is_elastic());
    for (std::size_t j = 0; j < amps.eta().size(); ++j) {
        const double r = std::abs(p.k() * p.eta()[j] - cplx(0.0, 0.5));
        CHECK(r == doctest::Approx(0.5 + 1e-3).epsilon(1e-14));
    }
}
