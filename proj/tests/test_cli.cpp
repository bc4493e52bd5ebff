#include "fdscat/cli.hpp"
#include "fdscat/phase_shifts.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fdscat;
using namespace fdscat::cli;

namespace
{

struct Run
{
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("fdscat_cli_" + name);
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<double>> csv_rows(const std::string& text, std::string* header = nullptr)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("phase-shifts writes a table and echoes sigma")
{
    const auto path = temp_file("hs.txt");
    const auto r = run_cli({"phase-shifts", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10",
                            "--out", path.string()});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.rfind("sigma: ", 0) == 0);
    const auto t = read_table(path);
    CHECK(t.shifts.size() == 11);
    CHECK(t.shifts[0] == -1.0);

    // without --out the table goes to standard output, sigma as a comment
    const auto s = run_cli({"phase-shifts", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10"});
    CHECK(parse_table(s.out) == t);
    CHECK(s.out.find("# sigma: ") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("phase-shifts: Numerov square well matches the analytic solver")
{
    const auto a = run_cli({"phase-shifts", "--potential", "square-well", "--k", "0.5", "--a", "1", "--v0", "1",
                            "--lmax", "4"});
    const auto n = run_cli({"phase-shifts", "--potential", "square-well", "--solver", "numerov", "--k", "0.5", "--a",
                            "1", "--v0", "1", "--lmax", "4"});
    REQUIRE(a.code == exit_ok);
    REQUIRE(n.code == exit_ok);
    const auto ta = parse_table(a.out), tn = parse_table(n.out);
    for (int l = 0; l <= 4; ++l) CHECK(std::abs(ta.shifts[l] - tn.shifts[l]) <= 1e-6);
}

TEST_CASE("configuration errors exit 2 naming the field")
{
    const auto r = run_cli({"phase-shifts", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "0"});
    CHECK(r.code == exit_config_error);
    CHECK(r.err.find("--lmax") != std::string::npos);

    CHECK(run_cli({"flux", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "3"}).code ==
          exit_config_error); // no --kr
    CHECK(run_cli({"flux", "--potential", "cube", "--k", "1", "--a", "1", "--lmax", "3", "--kr", "1"}).code ==
          exit_config_error);
    CHECK(run_cli({"flux", "--table", "x.txt", "--k", "1", "--kr", "1"}).err.find("--table") != std::string::npos);
    CHECK(run_cli({"scan", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "3", "--kr-min", "2",
                   "--kr-max", "1", "--points", "3"})
              .code == exit_config_error);
    CHECK(run_cli({"flux", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "3", "--kr", "1",
                   "--spin", "1/2", "--statistics", "bose"})
              .code == exit_config_error);
    CHECK(run_cli({"flux", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "3", "--kr", "1",
                   "--format", "xml"})
              .code == exit_config_error);
    const auto missing = run_cli({"flux", "--table", "/nonexistent/fdscat.txt", "--kr", "1"});
    CHECK(missing.code == exit_config_error);
    CHECK(missing.err.find("cannot open") != std::string::npos);
    CHECK(run_cli({"nonsense"}).code == exit_config_error);
    CHECK(run_cli({}).code == exit_config_error);
    CHECK(run_cli({"--help"}).code == exit_ok);
}

TEST_CASE("flux round-trips a phase-shifts file and has the documented columns")
{
    const auto table = temp_file("two.txt");
    {
        std::ofstream(table) << format_table({1.0, 1.0, {0.5, 0.2}});
    }
    const auto r = run_cli({"flux", "--table", table.string(), "--kr", "2", "--grid", "11"});
    REQUIRE(r.code == exit_ok);
    std::string header;
    const auto rows = csv_rows(r.out, &header);
    CHECK(header == "c,flux_exact,flux_order0,flux_order1,flux_order2,deviation");
    REQUIRE(rows.size() == 11);
    CHECK(rows.front()[0] == -1.0);
    CHECK(rows.back()[0] == 1.0);
    CHECK(rows.back()[1] == doctest::Approx(1.147230410713022).epsilon(1e-15));
    for (const auto& row : rows) CHECK(row[5] == doctest::Approx(row[1] / row[2] - 1.0).epsilon(1e-12));

    // byte-identical reruns
    CHECK(run_cli({"flux", "--table", table.string(), "--kr", "2", "--grid", "11"}).out == r.out);

    // phase-shifts output is accepted as is
    const auto hs = temp_file("hs2.txt");
    run_cli({"phase-shifts", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10", "--out",
             hs.string()});
    CHECK(run_cli({"flux", "--table", hs.string(), "--kr", "5", "--grid", "3"}).code == exit_ok);
    std::filesystem::remove(table);
    std::filesystem::remove(hs);
}

TEST_CASE("flux: s-wave has zero deviation, large kR a tiny one")
{
    const auto s_wave = temp_file("s.txt");
    {
        std::ofstream(s_wave) << format_table({1.0, 1.0, {0.7}});
    }
    for (const auto& row : csv_rows(run_cli({"flux", "--table", s_wave.string(), "--kr", "0.5", "--grid", "5"}).out)) {
        CHECK(row[5] == 0.0);
    }
    const auto far = run_cli({"flux", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10", "--kr",
                              "1e6", "--grid", "21"});
    for (const auto& row : csv_rows(far.out)) CHECK(std::abs(row[5]) < 1e-5);
    std::filesystem::remove(s_wave);
}

TEST_CASE("flux: json-lines output and --out")
{
    const auto out = temp_file("flux.jsonl");
    const auto r = run_cli({"flux", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "4", "--kr", "3",
                            "--grid", "4", "--format", "jsonl", "--out", out.string()});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.empty());
    const std::string text = slurp(out);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.rfind("{\"c\":-1,\"flux_exact\":", 0) == 0);
    std::filesystem::remove(out);
}

TEST_CASE("scan: total mode is flat, angle mode decays as 1/kR")
{
    const auto total = run_cli({"scan", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10",
                                "--kr-min", "0.5", "--kr-max", "1e4", "--points", "9"});
    REQUIRE(total.code == exit_ok);
    std::string header;
    const auto rows = csv_rows(total.out, &header);
    CHECK(header == "kR,value,deviation");
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) CHECK(std::abs(row[1] / rows[0][1] - 1.0) <= 1e-10);

    const auto angle = run_cli({"scan", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10",
                                "--kr-min", "10", "--kr-max", "1000", "--points", "5", "--mode", "angle", "--c",
                                "0.5"});
    REQUIRE(angle.code == exit_ok);
    const auto arows = csv_rows(angle.out);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : arows) {
        const double x = std::log(row[0]), y = std::log(std::abs(row[2]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(arows.size());
    CHECK((n * sxy - sx * sy) / (n * sxx - sx * sx) == doctest::Approx(-1.0).epsilon(0.1));

    const auto spin = run_cli({"scan", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10",
                               "--kr-min", "1", "--kr-max", "100", "--points", "3", "--spin", "1/2", "--statistics",
                               "fermi"});
    REQUIRE(spin.code == exit_ok);
    for (const auto& row : csv_rows(spin.out)) CHECK(std::abs(row[2]) <= 1e-10);
}

TEST_CASE("check: exit code contract")
{
    const auto manifest = temp_file("manifest.csv");
    const auto ok = run_cli({"check", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10", "--out",
                             manifest.string()});
    CHECK(ok.code == exit_ok);
    const std::string text = slurp(manifest);
    CHECK(text.rfind("name,samples,tolerance,max_abs_err,max_rel_err,pass\n", 0) == 0);
    CHECK(text.find(",false\n") == std::string::npos);
    CHECK(text.find("unitarity,") != std::string::npos);
    CHECK(text.find("r_independence,") != std::string::npos);

    const auto bad = run_cli({"check", "--potential", "hard-sphere", "--k", "1", "--a", "1", "--lmax", "10",
                              "--perturb", "1e-3", "--out", manifest.string()});
    CHECK(bad.code == exit_physics_failure);
    CHECK(bad.err.find("check failed: unitarity") != std::string::npos);
    CHECK(bad.err.find("check failed: optical_theorem") != std::string::npos);

    const auto empty = temp_file("empty.txt");
    {
        std::ofstream(empty) << "k: 1\na_eff: 1\nshifts: []\n";
    }
    CHECK(run_cli({"check", "--table", empty.string()}).code == exit_config_error);
    std::filesystem::remove(empty);
    std::filesystem::remove(manifest);
}
