#include "fdscat/error.hpp"
#include "fdscat/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace fdscat;

TEST_CASE("Gauss-Legendre rule integrates polynomials to its degree")
{
    for (int n : {1, 2, 5, 12, 40}) {
        const auto rule = gauss_legendre_rule(n);
        CHECK(rule.size() == n);
        double wsum = 0.0;
        for (double w : rule.weights()) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        const int d = rule.degree();
        const double even = d % 2 == 0 ? d : d - 1;
        CHECK(rule.integrate([&](double x) { return std::pow(x, even); }) ==
              doctest::Approx(2.0 / (even + 1)).epsilon(1e-13));
        for (std::size_t i = 1; i < rule.nodes().size(); ++i) CHECK(rule.nodes()[i] > rule.nodes()[i - 1]);
    }
}

TEST_CASE("two-point rule nodes")
{
    const auto rule = gauss_legendre_rule(2);
    CHECK(rule.nodes()[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-16));
    CHECK(rule.weights()[0] == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("rule size limits")
{
    CHECK_THROWS_AS(gauss_legendre_rule(0), DomainError);
    CHECK_THROWS_AS(gauss_legendre_rule(5000), DomainError);
}
