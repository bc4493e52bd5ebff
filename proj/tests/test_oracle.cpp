#include "fdscat/error.hpp"
#include "fdscat/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fdscat;
using namespace fdscat::oracle;

TEST_CASE("Green function multipole expansion")
{
    const cplx closed = green_closed_form(1.0, 2.0, 1.0, 1.0);
    CHECK(std::abs(closed - cplx(0.04299589137143180, 0.06696213335029095)) < 1e-15);
    CHECK(green_multipole_check(1.0, 2.0, 1.0, 1.0, 40).pass);
    CHECK(green_multipole_check(2.0, 5.0, 3.0, -0.4, 60).pass);
}

TEST_CASE("plane wave multipole expansion")
{
    CHECK(plane_wave_multipole_check(1.0, 3.0, 0.2, 40).pass);
    CHECK(plane_wave_multipole_check(1.0, 10.0, -1.0, 60).pass);
    // too few multipoles must show up as a failure
    CHECK_FALSE(plane_wave_multipole_check(1.0, 10.0, -1.0, 3).pass);
}

TEST_CASE("exponential-polynomial integral in closed form")
{
    CHECK(lemma2_check(2.0, {1.0}).pass);
    CHECK(lemma2_check(7.5, {0.3, -1.0, 2.0, 0.5}).pass);
    // H = 1: G = 1/(-ikr) on both ends
    const double kr = 1.3;
    const cplx g = 1.0 / cplx(0.0, -kr);
    CHECK(std::abs(lemma2_closed_form(kr, {1.0}) - (g - std::exp(cplx(0.0, 2.0 * kr)) * g)) < 1e-15);
}

TEST_CASE("shifted Legendre sum, Laplace-type integral, addition theorem")
{
    CHECK(shifted_legendre_check(12).pass);
    CHECK(legendre_shifted_sum(3, 0.0) == doctest::Approx(1.0));
    CHECK(a6_check(3, cplx(2.0, 1.0)).pass);
    CHECK(a6_check(0, cplx(0.7, -3.0)).pass);
    CHECK_THROWS_AS(a6_check(2, cplx(-1.0, 0.0)), DomainError);
    CHECK(addition_theorem_check(4, 0.3, 1.1).pass);
}

TEST_CASE("plane wave carries no net flux through a sphere")
{
    CHECK(plane_wave_flux_check(2.0, 0.5).pass);
    CHECK(std::abs(plane_wave_flux_integral(1.0, 1.0)) < 1e-6);
}

TEST_CASE("chi-product identities")
{
    CHECK(wronskian_direct_check(2, 5, 1.5).pass);
    CHECK(diagonal_wronskian_check(12, {0.5, 3.0, 50.0}).pass);
    CHECK(footnote_zero_check(10, {cplx(1.0, 2.0), cplx(0.0, -4.0)}).pass);
    CHECK(bracket_identity_check(10, {cplx(1.0, 2.0), cplx(0.0, -4.0)}).pass);
    CHECK(riccati_reconstruction_check(20, {cplx(3.0, 0.0), cplx(20.0, -5.0), cplx(0.5, 0.4)}).pass);
    CHECK(factorial_product_check(20).pass);
    CHECK(a1_delta_check(10).pass);
}

TEST_CASE("report bookkeeping")
{
    OracleReport r;
    r.tolerance = 1e-3;
    r.add(cplx(1.0005), cplx(1.0));
    r.add(cplx(2.0), cplx(2.0));
    r.finish();
    CHECK(r.samples == 2);
    CHECK(r.max_abs_err == doctest::Approx(5e-4));
    CHECK(r.pass);
    r.add(cplx(0.0), cplx(1.0));
    CHECK_FALSE(r.finish().pass);
}
