#include "fdscat/error.hpp"
#include "fdscat/phase_shifts.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

using namespace fdscat;

TEST_CASE("hard sphere s-wave shift is -ka")
{
    const auto t = hard_sphere_shifts(1.0, 1.0, 10);
    CHECK(t.lmax() == 10);
    CHECK(t.shifts[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(t.shifts[10]) < 1e-8);
    CHECK(t.tail_converged());
    const auto t2 = hard_sphere_shifts(0.3, 2.0, 4);
    CHECK(t2.shifts[0] == doctest::Approx(-0.6).epsilon(1e-15));
}

TEST_CASE("attractive square well against a frozen reference")
{
    const auto t = square_well_shifts(0.5, 1.0, 1.0, 6);
    CHECK(t.shifts[0] == doctest::Approx(0.2433818065005380).epsilon(1e-13));
    for (double d : t.shifts) CHECK(std::abs(d) <= std::numbers::pi / 2 + 1e-12);
}

TEST_CASE("Numerov reproduces the analytic square well")
{
    const double k = 0.5, a = 1.0, depth = 1.0;
    const auto exact = square_well_shifts(k, a, depth, 8);
    const auto num = numerov_shifts(PotentialModel::square_well(a, depth), k, 8);
    for (int l = 0; l <= 8; ++l) CHECK(std::abs(exact.shifts[l] - num.shifts[l]) <= 1e-6);
}

TEST_CASE("Numerov: impenetrable core approaches the hard sphere")
{
    const auto core = numerov_shifts(PotentialModel::square_well(1.0, -1e6), 1.0, 2);
    CHECK(core.shifts[0] == doctest::Approx(-1.0).epsilon(2e-3));
}

TEST_CASE("Numerov: step size limits and singular potentials")
{
    const auto well = PotentialModel::square_well(1.0, 1.0);
    CHECK_THROWS_AS(numerov_shifts(well, 1.0, 2, {0.0, 0.1}), DomainError);

    std::vector<double> r, v;
    for (int i = 1; i <= 300; ++i) {
        r.push_back(0.01 * i);
        v.push_back(i < 300 ? -1.0 / std::pow(r.back(), 3) : 0.0);
    }
    const auto singular = PotentialModel::tabulated(r, v);
    CHECK_THROWS_AS(numerov_shifts(singular, 1.0, 2), SingularPotentialError);
}

TEST_CASE("tabulated smooth potential converges with the sampling")
{
    auto sampled = [](int n) {
        std::vector<double> r, v;
        for (int i = 0; i <= n; ++i) {
            const double x = 2.0 * i / n;
            r.push_back(x);
            v.push_back(x < 1.0 ? -3.0 * std::pow(1.0 - x * x, 3) : 0.0);
        }
        return PotentialModel::tabulated(r, v);
    };
    const auto coarse = numerov_shifts(sampled(400), 0.8, 3);
    const auto fine = numerov_shifts(sampled(1600), 0.8, 3);
    for (int l = 0; l <= 3; ++l) CHECK(std::abs(coarse.shifts[l] - fine.shifts[l]) < 1e-6);
    CHECK_THROWS_AS(PotentialModel::tabulated({0.0, 1.0}, {1.0, 0.0}), InvariantError);
    CHECK_THROWS_AS(PotentialModel::tabulated({0.0, 1.0, 2.0}, {-1.0, -1.0, -1.0}), InvariantError);
}

TEST_CASE("zero-energy nodes count bound states")
{
    // depth 1: no bound state (needs depth > pi^2/4); depth 10: one s-wave state
    CHECK(zero_energy_nodes(PotentialModel::square_well(1.0, 1.0)) == 0);
    CHECK(zero_energy_nodes(PotentialModel::square_well(1.0, 10.0)) == 1);
    CHECK(zero_energy_nodes(PotentialModel::square_well(1.0, 30.0)) == 2);
}

TEST_CASE("branch fixing keeps the table continuous in l")
{
    std::vector<double> d{0.3 + std::numbers::pi, 0.25 - std::numbers::pi, 0.1};
    fix_branches(d);
    CHECK(d[0] == doctest::Approx(0.3));
    CHECK(d[1] == doctest::Approx(0.25));
    CHECK(d[2] == doctest::Approx(0.1));
}

TEST_CASE("table text format round-trips exactly")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    PhaseShiftTable t{0.7, 1.3, std::vector<double>(9)};
    for (auto& d : t.shifts) d = u(rng);
    const std::string text = format_table(t);
    CHECK(parse_table(text) == t);

    const auto path = std::filesystem::temp_directory_path() / "fdscat_table_roundtrip.txt";
    write_table(path, t);
    CHECK(read_table(path) == t);
    std::filesystem::remove(path);
}

TEST_CASE("table parse errors name line and field")
{
    CHECK(parse_table("# comment\nk: 1\na_eff: 1\nshifts: [0.5, 0.2]\n").shifts.size() == 2);
    try {
        parse_table("k: 1\nk: 2\na_eff: 1\nshifts: [0.1]\n");
        FAIL("duplicate field accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.field() == "k");
    }
    CHECK_THROWS_AS(parse_table("k: 1\na_eff: 1\n"), ParseError);
    CHECK_THROWS_AS(parse_table("k: 1\na_eff: 1\nshifts: [0.1, x]\n"), ParseError);
    CHECK_THROWS_AS(parse_table("k: 1\na_eff: 1\nspin: 0\nshifts: [0.1]\n"), ParseError);
    CHECK_THROWS_AS(parse_table("k: -1\na_eff: 1\nshifts: [0.1]\n"), InvariantError);
    CHECK_THROWS_AS(parse_table("k: 1\na_eff: 1\nshifts: []\n"), InvariantError);
    CHECK_THROWS(read_table("/nonexistent/fdscat/table.txt"));
}
